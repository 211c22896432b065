#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gmdist {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline Rational abs_ratio(std::int64_t num, std::int64_t den) {
  return abs(make_rational(num, den));
}

Rational pow(const Rational& base, unsigned long exponent);
Integer ceil(const Rational& q);
Integer floor(const Rational& q);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Fixed-point decimal rendering with `digits` fractional digits.
std::string to_decimal(const Rational& q, int digits = 6);

// Natural log of a positive rational, accurate for values far outside the
// double range (t(j) grows exponentially).
double log_of(const Rational& q);
double log_of(const Integer& z);

// Parses "p", "-p" or "p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace gmdist
