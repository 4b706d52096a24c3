#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "quivdc/error.hpp"

namespace quivdc {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Rejects a zero denominator.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& t) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '+'))
            t.erase(t.begin());
        while (!t.empty() && t.back() == ' ')
            t.pop_back();
    };
    trim(s);
    if (s.empty())
        throw ValidationError("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw ValidationError("malformed rational literal '" + std::string(text) + "'");
    if (q.get_den() == 0)
        throw ValidationError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str(10);
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

} // namespace quivdc
