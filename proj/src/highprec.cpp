#include "level17/highprec.hpp"

#include <algorithm>
#include <iomanip>
#include <mutex>
#include <sstream>

namespace level17 {
namespace {

std::mutex precision_mutex;

struct Split {
  Integer p, q, t;
};

// Binary splitting for sum_k (-1)^k (6k)! (A + Bk) / ((3k)! (k!)^3 C^(3k)).
Split chudnovsky_split(long a, long b) {
  static const Integer kA = 13591409, kB = 545140134;
  static const Integer kC3over24 = Integer("10939058860032000");  // 640320^3 / 24
  if (b - a == 1) {
    Split s;
    if (a == 0) {
      s.p = 1;
      s.q = 1;
    } else {
      s.p = -Integer(6 * a - 5) * (2 * a - 1) * (6 * a - 1);
      s.q = Integer(a) * a * a * kC3over24;
    }
    s.t = s.p * (kA + kB * a);
    return s;
  }
  const long m = (a + b) / 2;
  Split left = chudnovsky_split(a, m);
  Split right = chudnovsky_split(m, b);
  return {left.p * right.p, left.q * right.q, right.q * left.t + left.p * right.t};
}

unsigned digits_of(const Real& diff, const Real& size) {
  if (diff == 0) return 10000;
  const Real d = -boost::multiprecision::log10(diff / std::max(size, Real(1)));
  if (d <= 0) return 0;
  if (d >= 10000) return 10000;
  return static_cast<unsigned>(boost::multiprecision::floor(d).convert_to<long>());
}

}  // namespace

void require_digits(unsigned digits) {
  const unsigned wanted = digits + digits / 5 + 10;
  std::lock_guard lock(precision_mutex);
  if (Real::default_precision() < wanted) Real::default_precision(wanted);
}

unsigned working_digits() { return Real::default_precision(); }

Real to_real(const Integer& value) { return Real(value.get_str()); }

Real to_real(const Rational& value) {
  return to_real(Integer(value.get_num())) / to_real(Integer(value.get_den()));
}

std::string to_decimal(const Real& value, unsigned digits) {
  std::ostringstream out;
  out << std::setprecision(static_cast<int>(digits)) << value;
  return out.str();
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real d = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator-(const Complex& a) { return {Real(-a.re), Real(-a.im)}; }
Complex conj(const Complex& a) { return {a.re, Real(-a.im)}; }
Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
Real abs(const Complex& a) { return boost::multiprecision::sqrt(norm(a)); }

Complex exp(const Complex& a) {
  const Real m = boost::multiprecision::exp(a.re);
  return {Real(m * boost::multiprecision::cos(a.im)), Real(m * boost::multiprecision::sin(a.im))};
}

Complex sqrt(const Complex& a) {
  if (a.re == 0 && a.im == 0) return {};
  const Real r = abs(a);
  Real u = boost::multiprecision::sqrt((r + abs(a.re)) / 2);
  Real v = abs(a.im) / (2 * u);
  if (a.re >= 0) return {u, a.im < 0 ? Real(-v) : v};
  return {v, a.im < 0 ? Real(-u) : u};
}

Complex pow(const Complex& a, long k) {
  if (k < 0) return Complex(Real(1)) / pow(a, -k);
  Complex result(Real(1)), base = a;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Complex q_of_tau(const Complex& tau) {
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  return exp(Complex(Real(-two_pi * tau.im), Real(two_pi * tau.re)));
}

Real pi_chudnovsky(unsigned digits) {
  // Each term contributes a little over 14 digits.
  const long terms = static_cast<long>(digits / 14) + 2;
  const Split s = chudnovsky_split(0, terms);
  const Real root = boost::multiprecision::sqrt(Real(10005));
  return Real(426880) * root * to_real(s.q) / to_real(s.t);
}

unsigned agreement_digits(const Real& a, const Real& b) {
  return digits_of(boost::multiprecision::abs(a - b), boost::multiprecision::abs(b));
}

unsigned agreement_digits(const Complex& a, const Complex& b) { return digits_of(abs(a - b), abs(b)); }

}  // namespace level17
