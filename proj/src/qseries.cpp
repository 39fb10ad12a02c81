#include "level17/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace level17 {
namespace {

// Integer numerators over a shared denominator for coeffs[0..n).
Integer common_denominator(std::span<const Rational> coeffs, std::size_t n) {
  Integer den = 1;
  for (std::size_t i = 0; i < std::min(n, coeffs.size()); ++i)
    if (coeffs[i].get_den() != 1) den = lcm(den, coeffs[i].get_den());
  return den;
}

std::vector<Integer> scaled_numerators(std::span<const Rational> coeffs, std::size_t n,
                                       const Integer& den) {
  std::vector<Integer> out(std::min(n, coeffs.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    out[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  }
  return out;
}

}  // namespace

QSeries::QSeries() = default;

QSeries::QSeries(long denom, long val, long trunc, std::vector<Rational> coeffs)
    : denom_(denom), val_(val), trunc_(trunc), coeffs_(std::move(coeffs)) {
  if (denom_ <= 0) throw std::invalid_argument("QSeries: denominator must be positive");
  normalize();
}

QSeries QSeries::zero(long trunc, long denom) { return QSeries(denom, trunc, trunc, {}); }

QSeries QSeries::constant(const Rational& c, long trunc) {
  return monomial(c, 0, trunc, 1);
}

QSeries QSeries::monomial(const Rational& c, long exponent, long trunc, long denom) {
  if (exponent >= trunc) return zero(trunc, denom);
  std::vector<Rational> coeffs(static_cast<std::size_t>(trunc - exponent));
  coeffs[0] = c;
  return QSeries(denom, exponent, trunc, std::move(coeffs));
}

QSeries QSeries::from_coefficients(std::vector<Rational> coeffs, long val, long trunc,
                                   long denom) {
  if (trunc <= val) return zero(trunc, denom);
  coeffs.resize(static_cast<std::size_t>(trunc - val));
  return QSeries(denom, val, trunc, std::move(coeffs));
}

void QSeries::normalize() {
  // Canonical: no leading zeros, coefficient vector spans [val, trunc).
  std::size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = trunc_;
  } else if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    val_ += static_cast<long>(lead);
  }
  if (trunc_ < val_) {
    coeffs_.clear();
    val_ = trunc_;
  }

  // Minimal denominator: gcd of D with every supported exponent numerator and
  // the truncation numerator, so that reducing never discards known terms.
  if (denom_ == 1) return;
  long g = std::gcd(denom_, trunc_);
  for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i)
    if (sgn(coeffs_[i]) != 0) g = std::gcd(g, val_ + static_cast<long>(i));
  if (g == 1) return;
  const long new_trunc = trunc_ / g;
  std::vector<Rational> packed;
  const long new_val = coeffs_.empty() ? new_trunc : val_ / g;
  if (new_trunc > new_val) packed.resize(static_cast<std::size_t>(new_trunc - new_val));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const long e = val_ + static_cast<long>(i);
    if (e % g != 0) continue;
    const long k = e / g - new_val;
    if (k >= 0 && k < static_cast<long>(packed.size())) packed[static_cast<std::size_t>(k)] = coeffs_[i];
  }
  denom_ /= g;
  val_ = new_val;
  trunc_ = new_trunc;
  coeffs_ = std::move(packed);
  if (trunc_ <= val_) {
    coeffs_.clear();
    val_ = trunc_;
  }
}

Rational QSeries::coeff(long num) const {
  if (num >= trunc_) throw std::out_of_range("QSeries::coeff: exponent beyond truncation");
  if (num < val_) return 0;
  return coeffs_[static_cast<std::size_t>(num - val_)];
}

Rational QSeries::coeff_at(const Rational& exponent) const {
  Rational scaled = exponent * denom_;
  if (scaled.get_den() != 1) {
    if (exponent >= trunc_exponent())
      throw std::out_of_range("QSeries::coeff_at: exponent beyond truncation");
    return 0;
  }
  return coeff(scaled.get_num().get_si());
}

const Rational& QSeries::leading_coefficient() const {
  if (coeffs_.empty()) throw std::domain_error("QSeries: zero series has no leading coefficient");
  return coeffs_.front();
}

QSeries QSeries::truncated(long new_trunc) const {
  if (new_trunc >= trunc_) return *this;
  if (new_trunc <= val_) return zero(new_trunc, denom_);
  std::vector<Rational> c(coeffs_.begin(), coeffs_.begin() + (new_trunc - val_));
  return QSeries(denom_, val_, new_trunc, std::move(c));
}

QSeries QSeries::truncated_at(const Rational& exponent) const {
  // Keep every grid exponent strictly below e.
  const Rational scaled = exponent * denom_;
  Integer ce;
  mpz_cdiv_q(ce.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return truncated(ce.get_si());
}

QSeries QSeries::with_denom(long new_denom) const {
  if (new_denom % denom_ != 0)
    throw std::invalid_argument("QSeries::with_denom: not a multiple of the current denominator");
  const long k = new_denom / denom_;
  if (k == 1) return *this;
  QSeries out;
  out.denom_ = new_denom;
  out.val_ = val_ * k;
  out.trunc_ = trunc_ * k;
  if (!coeffs_.empty()) {
    out.coeffs_.resize(static_cast<std::size_t>(out.trunc_ - out.val_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i * static_cast<std::size_t>(k)] = coeffs_[i];
  }
  return out;  // deliberately not normalized
}

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

QSeries& QSeries::operator+=(const QSeries& other) {
  const long d = std::lcm(denom_, other.denom_);
  QSeries a = with_denom(d);
  QSeries b = other.with_denom(d);
  const long trunc = std::min(a.trunc_, b.trunc_);
  const long val = std::min(a.val_, b.val_);
  std::vector<Rational> c(trunc > val ? static_cast<std::size_t>(trunc - val) : 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const long k = a.val_ + static_cast<long>(i) - val;
    if (k < static_cast<long>(c.size())) c[static_cast<std::size_t>(k)] += a.coeffs_[i];
  }
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
    const long k = b.val_ + static_cast<long>(i) - val;
    if (k < static_cast<long>(c.size())) c[static_cast<std::size_t>(k)] += b.coeffs_[i];
  }
  *this = QSeries(d, std::min(val, trunc), trunc, std::move(c));
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) { return *this += -other; }

QSeries& QSeries::operator*=(const QSeries& other) { return *this = *this * other; }

QSeries& QSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    *this = zero(trunc_, denom_);
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QSeries operator+(QSeries a, const Rational& c) {
  if (a.trunc_ <= 0) throw std::domain_error("QSeries: constant term is not known");
  return a + QSeries::monomial(c, 0, a.trunc_, a.denom_);
}

QSeries operator*(const QSeries& a_in, const QSeries& b_in) {
  const long d = std::lcm(a_in.denom_, b_in.denom_);
  const QSeries a = a_in.with_denom(d);
  const QSeries b = b_in.with_denom(d);
  const long val = a.val_ + b.val_;
  const long trunc = std::min(a.trunc_ + b.val_, b.trunc_ + a.val_);
  if (a.coeffs_.empty() || b.coeffs_.empty() || trunc <= val) return QSeries::zero(trunc, d);
  const std::size_t n = static_cast<std::size_t>(trunc - val);
  const Integer da = common_denominator(a.coeffs_, n);
  const Integer db = common_denominator(b.coeffs_, n);
  const auto ia = scaled_numerators(a.coeffs_, n, da);
  const auto ib = scaled_numerators(b.coeffs_, n, db);
  std::vector<Integer> acc(n);
  for (std::size_t i = 0; i < ia.size(); ++i) {
    if (ia[i] == 0) continue;
    const std::size_t jmax = std::min(ib.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j)
      if (ib[j] != 0) mpz_addmul(acc[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
  }
  const Integer den = da * db;
  std::vector<Rational> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = Rational(acc[k], den);
    c[k].canonicalize();
  }
  return QSeries(d, val, trunc, std::move(c));
}

QSeries operator/(const QSeries& a, const QSeries& b) { return a * inverse(b); }

bool operator==(const QSeries& a, const QSeries& b) {
  return a.denom_ == b.denom_ && a.val_ == b.val_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
}

std::optional<Rational> residual_valuation(const QSeries& f) {
  if (f.is_zero()) return std::nullopt;
  return f.valuation_exponent();
}

QSeries inverse(const QSeries& f) {
  if (f.is_zero()) throw std::domain_error("inverse: series is zero to its truncation order");
  const long n = f.trunc() - f.valuation();
  const auto coeffs = f.coefficients();
  const Integer den = common_denominator(coeffs, static_cast<std::size_t>(n));
  const auto g = scaled_numerators(coeffs, static_cast<std::size_t>(n), den);
  const Integer& g0 = g[0];

  // 1/G with G integral: U_k = u_k * g0^(k+1) are integers satisfying
  // U_0 = 1, U_k = -sum_{j>=1} G_j g0^(j-1) U_{k-j}.
  std::vector<Integer> gp(g.size());
  Integer power = 1;
  for (std::size_t j = 1; j < g.size(); ++j) {
    gp[j] = g[j] * power;
    power *= g0;
  }
  std::vector<Integer> u(static_cast<std::size_t>(n));
  u[0] = 1;
  for (std::size_t k = 1; k < u.size(); ++k) {
    Integer s = 0;
    const std::size_t jmax = std::min(k, gp.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j)
      if (gp[j] != 0) mpz_addmul(s.get_mpz_t(), gp[j].get_mpz_t(), u[k - j].get_mpz_t());
    u[k] = -s;
  }
  std::vector<Rational> c(u.size());
  Integer g0_power = g0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    c[k] = Rational(u[k] * den, g0_power);
    c[k].canonicalize();
    g0_power *= g0;
  }
  return QSeries::from_coefficients(std::move(c), -f.valuation(), n - f.valuation(), f.denom());
}

QSeries pow(const QSeries& f, long k) {
  if (k < 0) return pow(inverse(f), -k);
  // 1 known to the relative precision of f.
  QSeries result = QSeries::monomial(1, 0, std::max(1L, f.trunc() - f.valuation()), f.denom());
  if (k == 0) return result;
  QSeries base = f;
  result = QSeries();
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

QSeries theta_q(const QSeries& f) {
  std::vector<Rational> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= make_rational(f.valuation() + static_cast<long>(i), f.denom());
  return QSeries::from_coefficients(std::move(c), f.valuation(), f.trunc(), f.denom());
}

QSeries theta_q_log(const QSeries& f) {
  if (f.is_zero()) throw std::domain_error("theta_q_log: series is zero to its truncation order");
  return theta_q(f) / f;
}

QSeries sqrt(const QSeries& f, int sign) {
  if (f.is_zero()) throw std::domain_error("sqrt: series is zero to its truncation order");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sqrt: sign must be +1 or -1");
  Rational root;
  if (!rational_sqrt(f.leading_coefficient(), root))
    throw std::domain_error("sqrt: leading coefficient is not the square of a rational");
  root *= sign;
  if (f.valuation() % 2 != 0)
    throw std::domain_error("sqrt: leading exponent is not even on the series grid");
  const auto coeffs = f.coefficients();
  const std::size_t m = coeffs.size();
  std::vector<Rational> s(m);
  s[0] = root;
  const Rational two_s0 = 2 * root;
  for (std::size_t k = 1; k < m; ++k) {
    Rational acc = coeffs[k];
    for (std::size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc / two_s0;
  }
  // f = q^v (c_0 + ...) with relative precision m, so sqrt(f) = q^(v/2) (s_0 + ...).
  const long half = f.valuation() / 2;
  return QSeries::from_coefficients(std::move(s), half, half + static_cast<long>(m), f.denom());
}

QSeries rescale(const QSeries& f, const Rational& k) {
  if (sgn(k) <= 0) throw std::invalid_argument("rescale: factor must be positive");
  const long a = k.get_num().get_si();
  const long b = k.get_den().get_si();
  // q^(e/D) -> q^(e*a/(D*b))
  std::vector<Rational> c;
  const long val = f.valuation() * a;
  const long trunc = f.trunc() * a;
  if (!f.is_zero()) {
    c.resize(static_cast<std::size_t>(trunc - val));
    const auto src = f.coefficients();
    for (std::size_t i = 0; i < src.size(); ++i) c[i * static_cast<std::size_t>(a)] = src[i];
  }
  return QSeries::from_coefficients(std::move(c), f.is_zero() ? trunc : val, trunc, f.denom() * b);
}

QSeries substitute(const QSeries& f, const Rational& k, int sign) {
  if (sign == 1) return rescale(f, k);
  if (sign != -1) throw std::invalid_argument("substitute: sign must be +1 or -1");
  if (f.denom() != 1) throw std::domain_error("substitute: q -> -q^k needs integral exponents");
  std::vector<Rational> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t i = 0; i < c.size(); ++i)
    if ((f.valuation() + static_cast<long>(i)) % 2 != 0) c[i] = -c[i];
  return rescale(QSeries::from_coefficients(std::move(c), f.valuation(), f.trunc(), 1), k);
}

QSeries pochhammer_block(std::span<const long> offsets, long modulus, int sign, long trunc) {
  if (trunc <= 0) throw std::invalid_argument("pochhammer_block: trunc must be positive");
  if (modulus <= 0) throw std::invalid_argument("pochhammer_block: modulus must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("pochhammer_block: sign must be +1 or -1");
  std::vector<Integer> c(static_cast<std::size_t>(trunc));
  c[0] = 1;
  const auto n = static_cast<long>(trunc);
  for (long offset : offsets) {
    if (offset < 1 || offset > modulus)
      throw std::invalid_argument("pochhammer_block: offset outside 1..modulus");
    for (long e = offset; e < n; e += modulus) {
      if (sign > 0) {
        for (long i = n - 1; i >= e; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - e)];
      } else {
        for (long i = e; i < n; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - e)];
      }
    }
  }
  std::vector<Rational> out(c.begin(), c.end());
  return QSeries::from_coefficients(std::move(out), 0, trunc, 1);
}

QSeries eta_quotient(const EtaQuotientSpec& spec, long trunc) {
  QSeries product = QSeries::constant(1, trunc);
  for (auto [m, e] : spec.factors) {
    if (m <= 0) throw std::invalid_argument("eta_quotient: m must be positive");
    const std::vector<long> one{m};
    const QSeries block = pochhammer_block(one, m, e >= 0 ? 1 : -1, trunc);
    for (long i = 0; i < std::abs(e); ++i) product = product * block;
  }
  const long d = spec.qshift.get_den().get_si();
  const long shift = spec.qshift.get_num().get_si();
  const QSeries spread = product.with_denom(d);
  std::vector<Rational> sc(spread.coefficients().begin(), spread.coefficients().end());
  return QSeries::from_coefficients(std::move(sc), spread.valuation() + shift, spread.trunc() + shift, d);
}

nlohmann::json to_json(const QSeries& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (long e = f.valuation(); e < f.trunc(); ++e) coeffs.push_back(to_string(f.coeff(e)));
  return {{"denom", f.denom()}, {"val", f.valuation()}, {"trunc", f.trunc()}, {"coeffs", coeffs}};
}

QSeries qseries_from_json(const nlohmann::json& j) {
  const long denom = j.at("denom").get<long>();
  const long val = j.at("val").get<long>();
  const long trunc = j.at("trunc").get<long>();
  std::vector<Rational> c;
  for (const auto& s : j.at("coeffs")) c.push_back(parse_rational(s.get<std::string>()));
  if (static_cast<long>(c.size()) != std::max(0L, trunc - val))
    throw std::invalid_argument("qseries_from_json: coefficient count does not match val/trunc");
  return QSeries::from_coefficients(std::move(c), val, trunc, denom);
}

}  // namespace level17
