#pragma once

#include "quivdc/endomorphism.hpp"
#include "quivdc/functor.hpp"
#include "quivdc/gentle.hpp"
#include "quivdc/glue.hpp"
#include "quivdc/io.hpp"
#include "quivdc/minimize.hpp"
#include "quivdc/survey.hpp"
