#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace level17 {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" (or "p" when integral) form used in every JSON surface.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

Integer lcm(const Integer& a, const Integer& b);

/// Largest-square-free part with sign kept: squarefree_part(-12) == -3.
std::int64_t squarefree_part(std::int64_t n);

/// Returns true and sets `root` when `value` is the square of a rational.
bool rational_sqrt(const Rational& value, Rational& root);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace level17
