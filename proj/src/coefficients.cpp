#include "level17/coefficients.hpp"

#include <array>
#include <mutex>
#include <stdexcept>

namespace level17 {
namespace {

std::mutex a_mutex;
std::vector<Rational> a_cache{Rational(2)};

Rational a_at(const std::vector<Rational>& a, long i) {
  return i < 0 ? Rational(0) : a[static_cast<std::size_t>(i)];
}

// Extends `a` by one term using the recurrence at index n = a.size() - 1.
void extend_recurrence(std::vector<Rational>& a) {
  const long n = static_cast<long>(a.size()) - 1;
  const Integer m(n);
  const std::array<Integer, 7> weights{
      -19 * m * m * m - 24 * m * m - 14 * m - 3,
      -3 * (5 * m * m * m + 27 * m * m - 8 * m + 4),
      101 * m * m * m - 300 * m * m + 213 * m - 52,
      -3 * (55 * m * m * m - 267 * m * m + 491 * m - 305),
      3 * (m - 3) * (101 * m * m - 297 * m + 253),
      -9 * (m - 4) * (m - 3) * (37 * m - 66),
      127 * (m - 5) * (m - 4) * (m - 3),
  };
  Rational s = 0;
  for (long k = 0; k < 7; ++k) s += Rational(weights[static_cast<std::size_t>(k)]) * a_at(a, n - k);
  const Integer cube = (m + 1) * (m + 1) * (m + 1);
  a.push_back(-s / Rational(cube));
}

Real evaluate(std::span<const long> c, const Real& x) {
  Real acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

}  // namespace

std::string to_string(CoeffSource source) {
  switch (source) {
    case CoeffSource::Recurrence:
      return "recurrence";
    case CoeffSource::Composition:
      return "composition";
    case CoeffSource::ClosedForm:
      return "closed-form";
  }
  return "recurrence";
}

bool CoeffSequence::all_integral() const {
  for (const auto& v : values)
    if (v.get_den() != 1) return false;
  return true;
}

CoeffSequence gen_A(long n) {
  if (n < 0) throw std::invalid_argument("gen_A: N must be nonnegative");
  std::lock_guard lock(a_mutex);
  while (static_cast<long>(a_cache.size()) <= n) extend_recurrence(a_cache);
  return {std::vector<Rational>(a_cache.begin(), a_cache.begin() + n + 1), CoeffSource::Recurrence};
}

CoeffSequence solve_A_by_composition(long n, ModularCatalog& catalog) {
  if (n < 0) throw std::invalid_argument("solve_A_by_composition: N must be nonnegative");
  const long trunc = n + 1;
  const QSeries z = catalog.build("z", trunc);
  const QSeries x = catalog.build("x", trunc);
  // x = q/2 + ..., so [q^k] x^k = 2^-k and A_k is forced by the q^k coefficient.
  QSeries partial = QSeries::zero(trunc);
  QSeries power = QSeries::constant(1, trunc);
  CoeffSequence out{{}, CoeffSource::Composition};
  for (long k = 0; k <= n; ++k) {
    const Rational lead = power.coeff(k);
    const Rational ak = (z.coeff(k) - partial.coeff(k)) / lead;
    out.values.push_back(ak);
    partial += ak * power;
    power = power * x;
  }
  return out;
}

IdentityReport verify_composition(long trunc, ModularCatalog& catalog) {
  if (trunc < 10) throw std::invalid_argument("verify_composition needs trunc >= 10");
  const auto a = gen_A(trunc);
  const QSeries x = catalog.build("x", trunc);
  QSeries sum = QSeries::zero(trunc);
  QSeries power = QSeries::constant(1, trunc);
  for (long k = 0; k < trunc; ++k) {
    sum += a.values[static_cast<std::size_t>(k)] * power;
    power = power * x;
  }
  return make_report("z-composition", "z = sum A_n x^n with A_n from the recurrence", trunc,
                     catalog.build("z", trunc) - sum);
}

CoeffSequence level5_a(long n) {
  if (n < 0) throw std::invalid_argument("level5_a: N must be nonnegative");
  CoeffSequence out{{}, CoeffSource::ClosedForm};
  for (long k = 0; k <= n; ++k) {
    Integer sum = 0;
    for (long j = 0; j <= k; ++j) {
      Integer b1, b2;
      mpz_bin_uiui(b1.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
      mpz_bin_uiui(b2.get_mpz_t(), static_cast<unsigned long>(k + j), static_cast<unsigned long>(j));
      sum += b1 * b1 * b2;
    }
    Integer central;
    mpz_bin_uiui(central.get_mpz_t(), static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k));
    out.values.emplace_back(central * sum);
  }
  return out;
}

const std::vector<long>& radius_polynomial() {
  static const std::vector<long> p{-1, 16, 66, 48, 127};
  return p;
}

Real radius(unsigned digits) {
  require_digits(digits);
  const auto& p = radius_polynomial();
  const std::vector<long> dp{16, 132, 144, 508};
  // The polynomial is -1 at 0 and positive at 0.06; bisect to a safe start,
  // then Newton converges quadratically.
  Real lo = 0, hi = Real(6) / 100;
  for (int i = 0; i < 40; ++i) {
    Real mid = (lo + hi) / 2;
    (evaluate(p, mid) < 0 ? lo : hi) = mid;
  }
  Real x = (lo + hi) / 2;
  const Real tol = boost::multiprecision::pow(Real(10), -static_cast<int>(working_digits()) + 5);
  for (int i = 0; i < 200; ++i) {
    const Real step = evaluate(p, x) / evaluate(dp, x);
    x -= step;
    if (boost::multiprecision::abs(step) < tol) break;
  }
  return x;
}

}  // namespace level17
