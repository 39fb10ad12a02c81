#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "level17/exact.hpp"

namespace level17 {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                          boost::multiprecision::et_off>;

/// Raises the working precision (never lowers it) so that at least `digits`
/// decimal digits plus a 20% guard are carried. MPFR's default precision is
/// process-wide: call this before spawning threads that do numerics.
void require_digits(unsigned digits);
unsigned working_digits();

Real to_real(const Rational& value);
Real to_real(const Integer& value);
/// Fixed-notation decimal string with `digits` significant digits.
std::string to_decimal(const Real& value, unsigned digits);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator-(const Complex& a);
Complex conj(const Complex& a);
Real norm(const Complex& a);  // |a|^2
Real abs(const Complex& a);
Complex exp(const Complex& a);
/// Principal branch.
Complex sqrt(const Complex& a);
Complex pow(const Complex& a, long k);
/// exp(2 pi i tau)
Complex q_of_tau(const Complex& tau);

/// pi by the Chudnovsky series with integer binary splitting, independent of
/// MPFR's built-in constant. Correct to at least `digits` decimal digits.
Real pi_chudnovsky(unsigned digits);

/// -log10 of |a - b| / max(|b|, 1), floored at 0 and capped at 10000: relative
/// agreement for large values, absolute for values below 1.
unsigned agreement_digits(const Real& a, const Real& b);
unsigned agreement_digits(const Complex& a, const Complex& b);

}  // namespace level17
