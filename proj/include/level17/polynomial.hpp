#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "level17/qseries.hpp"
#include "level17/surd.hpp"

namespace level17 {

/// Univariate polynomial with rational coefficients, constant term first and
/// no trailing zeros (the zero polynomial is empty).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly from_integers(const std::vector<long>& coeffs);
  static Poly monomial(const Rational& c, std::size_t degree);

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly derivative() const;
  Rational evaluate(const Rational& x) const;
  Surd evaluate(const Surd& x) const;
  /// Integer coefficients with positive leading term and content 1.
  Poly primitive() const;
  /// Content over Z of an integral polynomial with sign of the leading term.
  Rational content() const;
  bool is_integral() const;
  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder over Q.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);

struct PolyFactor {
  Poly factor;  // primitive, irreducible over Z
  int multiplicity;
};

struct Factorization {
  Rational unit;
  std::vector<PolyFactor> factors;

  Poly expand() const;
  std::string to_string(const std::string& var = "X") const;
};

/// Factorization into irreducibles over Z: square-free decomposition, then
/// Zassenhaus (factoring modulo a small prime, Hensel lifting, recombination).
Factorization factor(const Poly& p);

/// Bivariate polynomial with integer coefficients keyed by (i, j) for X^i Y^j.
class BivarPoly {
 public:
  BivarPoly() = default;
  explicit BivarPoly(std::map<std::pair<int, int>, Integer> coeffs);

  const std::map<std::pair<int, int>, Integer>& coeffs() const { return c_; }
  Integer coeff(int i, int j) const;
  int degree_x() const;
  int degree_y() const;
  bool is_symmetric() const;
  std::size_t size() const { return c_.size(); }

  BivarPoly operator-() const;
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.c_ == b.c_; }

  /// d^a/dX^a d^b/dY^b
  BivarPoly derivative(int a, int b) const;
  Surd evaluate(const Surd& x, const Surd& y) const;
  Complex evaluate(const Complex& x, const Complex& y) const;
  QSeries evaluate(const QSeries& x, const QSeries& y) const;
  /// P(X, X)
  Poly diagonal() const;
  std::string to_string() const;

 private:
  std::map<std::pair<int, int>, Integer> c_;
};

/// [[i, j, "c"], ...] in lexicographic (i, j) order.
nlohmann::json to_json(const BivarPoly& p);
BivarPoly bivar_from_json(const nlohmann::json& j);

}  // namespace level17
