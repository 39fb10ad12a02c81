#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "level17/exact.hpp"

namespace level17 {

/// Truncated Laurent-Puiseux series in q^(1/D) with exact rational coefficients.
///
/// Exponents are stored as integer numerators over the shared denominator D.
/// A series with valuation v and truncation t stands for
///
///     sum_{k=v}^{t-1} c_k q^(k/D) + O(q^(t/D)).
///
/// The zero series to order t is represented by v == t and no coefficients.
/// Values are immutable once built; all operations return new series.
class QSeries {
 public:
  /// O(q^0), the zero series known to no order at all.
  QSeries();

  static QSeries zero(long trunc, long denom = 1);
  static QSeries constant(const Rational& c, long trunc);
  /// c * q^(exponent/denom) + O(q^(trunc/denom)).
  static QSeries monomial(const Rational& c, long exponent, long trunc, long denom = 1);
  /// coeffs[k] is the coefficient of q^((val + k)/denom); entries at or past
  /// `trunc` are dropped.
  static QSeries from_coefficients(std::vector<Rational> coeffs, long val, long trunc,
                                   long denom = 1);

  long denom() const { return denom_; }
  long valuation() const { return val_; }
  long trunc() const { return trunc_; }
  Rational valuation_exponent() const { return make_rational(val_, denom_); }
  Rational trunc_exponent() const { return make_rational(trunc_, denom_); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of q^(num/denom). Throws std::out_of_range at or beyond trunc.
  Rational coeff(long num) const;
  /// Coefficient of q^e for a rational exponent e.
  Rational coeff_at(const Rational& exponent) const;
  const Rational& leading_coefficient() const;
  /// Coefficients from the valuation up to trunc - 1.
  std::span<const Rational> coefficients() const { return coeffs_; }

  /// Drops information past q^(new_trunc/denom); never extends.
  QSeries truncated(long new_trunc) const;
  /// Truncates at the rational exponent e (rounded down to the series grid).
  QSeries truncated_at(const Rational& exponent) const;
  /// Re-expresses the series over a denominator that is a multiple of denom().
  QSeries with_denom(long new_denom) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries& operator*=(const QSeries& other);
  QSeries& operator*=(const Rational& c);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
  friend QSeries operator/(const QSeries& a, const QSeries& b);
  /// Adds a constant (the series must be known at q^0).
  friend QSeries operator+(QSeries a, const Rational& c);
  friend QSeries operator-(QSeries a, const Rational& c) { return std::move(a) + Rational(-c); }
  friend QSeries operator+(const Rational& c, QSeries a) { return std::move(a) + c; }
  friend QSeries operator-(const Rational& c, const QSeries& a) { return (-a) + c; }

  /// Same denominator-normalized data (valuation, truncation, coefficients).
  friend bool operator==(const QSeries& a, const QSeries& b);

 private:
  QSeries(long denom, long val, long trunc, std::vector<Rational> coeffs);
  void normalize();

  long denom_ = 1;
  long val_ = 0;
  long trunc_ = 0;
  std::vector<Rational> coeffs_;
};

/// Exponent (as a rational) of the first nonzero coefficient, or nullopt when
/// the series vanishes to its truncation order.
std::optional<Rational> residual_valuation(const QSeries& f);

QSeries inverse(const QSeries& f);
QSeries pow(const QSeries& f, long k);

/// q d/dq applied termwise.
QSeries theta_q(const QSeries& f);
/// (q d/dq f) / f. Throws std::domain_error on a series that is zero to its order.
QSeries theta_q_log(const QSeries& f);

/// Square root with leading coefficient of the requested sign (+1 or -1).
/// Throws std::domain_error if the leading coefficient is not a rational square.
QSeries sqrt(const QSeries& f, int sign = 1);

/// Substitutes q -> q^k for a positive rational k.
QSeries rescale(const QSeries& f, const Rational& k);
/// Substitutes q -> sign * q^k. A sign of -1 needs integral exponents.
QSeries substitute(const QSeries& f, const Rational& k, int sign);

/// prod over offsets o of prod_{j>=0} (1 - q^(o + j*modulus))^sign, to O(q^trunc).
/// Offsets form a multiset drawn from 1..modulus.
QSeries pochhammer_block(std::span<const long> offsets, long modulus, int sign, long trunc);

/// q^qshift * prod (q^m; q^m)_inf^e.
struct EtaQuotientSpec {
  std::vector<std::pair<long, long>> factors;  // (m, e)
  Rational qshift;
};
/// `trunc` is the order in q (relative to q^0) to which the product is known.
QSeries eta_quotient(const EtaQuotientSpec& spec, long trunc);

nlohmann::json to_json(const QSeries& f);
QSeries qseries_from_json(const nlohmann::json& j);

}  // namespace level17
