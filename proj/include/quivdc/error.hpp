#pragma once

#include <stdexcept>
#include <string>

namespace quivdc {

/// Input that violates a structural contract (typing, d^2 = 0, relations, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An invariant that is undefined on its input, e.g. hl of an acyclic complex.
class UndefinedInvariant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A decision procedure asked to run outside the class of inputs it covers.
class OutOfScope : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace quivdc
