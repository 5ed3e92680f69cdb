#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace online {

/// Exact rational number. Always kept in canonical form.
using Rational = mpq_class;

/// Parses "p/q" or "p". Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text ("p" when the denominator is 1).
std::string to_string(const Rational& value);

/// 2^exponent, exponent may be negative.
Rational pow2(long exponent);

bool is_dyadic(const Rational& value);

Rational abs(const Rational& value);

} // namespace online
