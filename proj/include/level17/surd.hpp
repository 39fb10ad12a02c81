#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "level17/highprec.hpp"

namespace level17 {

/// Exact element of a multiquadratic field Q(sqrt(m1), sqrt(m2), ...):
/// a finite sum of c_m sqrt(m) over squarefree integers m, where m = 1 is the
/// rational part and sqrt(m) for negative m means i sqrt(|m|).
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& c);  // NOLINT(google-explicit-constructor)
  Surd(long c) : Surd(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  /// c * sqrt(n) for any nonzero integer n (square factors are pulled out).
  static Surd root(long n, const Rational& c = 1);
  /// p + q sqrt(m)
  static Surd quadratic(const Rational& p, const Rational& q, long m);

  const std::map<long, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rational rational_part() const;
  /// Terms with positive radicand.
  Surd real_part() const;
  /// Terms with negative radicand, still carrying their factor of i.
  Surd imaginary_part() const;
  bool is_real() const;

  Surd operator-() const;
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
  friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }

  /// Flips the sign of sqrt(p) for the prime p (or p = -1 for i).
  Surd conjugate(long p) const;
  /// Complex conjugate.
  Surd complex_conjugate() const { return conjugate(-1); }
  /// Prime generators (and -1) occurring in the radicands.
  std::vector<long> generators() const;

  Complex to_complex() const;
  std::string to_string() const;

 private:
  std::map<long, Rational> terms_;
};

Surd inverse(const Surd& a);
Surd pow(const Surd& a, long k);

/// Monic minimal polynomial over Q, coefficients constant term first, as the
/// product of X - sigma(a) over the distinct Galois conjugates of a.
std::vector<Rational> minimal_polynomial(const Surd& a);

/// Quadratic number p + q sqrt(m) as written in JSON.
struct QuadSurd {
  Rational p;
  Rational q;
  long m = 1;

  Surd to_surd() const { return Surd::quadratic(p, q, m); }
};

/// Writes {"p", "q", "m"} when a lives in a single quadratic field; otherwise
/// {"terms": [[m, "c"], ...]}.
nlohmann::json to_json(const Surd& a);
Surd surd_from_json(const nlohmann::json& j);

}  // namespace level17
