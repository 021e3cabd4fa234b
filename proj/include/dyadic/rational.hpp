#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dyadic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign) into a canonical rational.
/// Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

Rational make_rational(long numerator, long denominator = 1);

/// 2^exponent for any sign of exponent.
Rational pow2(long exponent);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double value);

}  // namespace dyadic
