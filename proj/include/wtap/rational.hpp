#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wtap {

/// Exact rational scalar used for every cost and LP value.
using Rational = mpq_class;

/// Parses `p`, `-p` or `p/q`; returns false on malformed text or zero denominator.
bool parse_rational(std::string_view text, Rational& out);

/// Formats as `p/q` (always with a denominator, `q` = 1 for integers).
std::string format_rational(const Rational& value);

/// Formats as `p` or `p/q`, omitting a unit denominator.
std::string format_rational_short(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace wtap
