#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace corpusgame {

/// Exact, unbounded rational number.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "a/b", "a", or a finite decimal such as "0.25" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always renders as "num/den" (integers as "k/1").
std::string to_string(const Rational& value);

/// Decimal rendering for human-facing columns; not round-trippable.
std::string to_decimal(const Rational& value, int digits = 6);

Rational floor_div(const Rational& value);  // floor(value) as a rational integer
Rational ceil_div(const Rational& value);

long long floor_int(const Rational& value);
long long ceil_int(const Rational& value);

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace corpusgame
