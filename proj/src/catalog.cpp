#include "level17/catalog.hpp"

#include <array>
#include <mutex>
#include <stdexcept>

namespace level17 {
namespace {

// Extra working order so that divisions by series of positive valuation still
// leave every requested coefficient exact.
constexpr long kGuard = 4;

struct EisensteinProduct {
  std::array<long, 4> numerator;
  std::array<long, 4> denominator;
  long lead;
};

// Offsets of (q^a, q^b, ... ; q^17)_inf above and below the bar, plus the
// leading power of q, for E1..E8.
constexpr std::array<EisensteinProduct, 8> kEisenstein{{
    {{8, 9, 17, 17}, {2, 3, 14, 15}, 0},
    {{3, 14, 17, 17}, {1, 5, 12, 16}, 1},
    {{1, 16, 17, 17}, {4, 6, 11, 13}, 3},
    {{6, 11, 17, 17}, {2, 7, 10, 15}, 1},
    {{2, 15, 17, 17}, {5, 8, 9, 12}, 3},
    {{5, 12, 17, 17}, {3, 4, 13, 14}, 1},
    {{4, 13, 17, 17}, {1, 7, 10, 16}, 1},
    {{7, 10, 17, 17}, {6, 8, 9, 11}, 2},
}};

QSeries shift(const QSeries& f, long k) { return f * QSeries::monomial(1, k, f.trunc() + k); }

// q^lead * prod_n (1 - q^n)^(power * (n/p)), known to O(q^trunc).
QSeries character_product(long p, long power, long lead, long trunc) {
  std::vector<long> residues, nonresidues;
  for (long a = 1; a < p; ++a) (legendre(a, p) == 1 ? residues : nonresidues).push_back(a);
  const long n = trunc - lead;
  QSeries block = pochhammer_block(residues, p, 1, n) * pochhammer_block(nonresidues, p, -1, n);
  return shift(pow(block, power), lead);
}

// q^lead * prod (1 - q^(p n))^e / (1 - q^n)^e
QSeries eta_ratio(long p, long e, long lead, long trunc) {
  const std::vector<long> top{p}, all{1};
  const long n = trunc - lead;
  QSeries block = pochhammer_block(top, p, 1, n) * pochhammer_block(all, 1, -1, n);
  return shift(pow(block, e), lead);
}

// sum_n (n/p) q^n / (1 - q^n)^2
QSeries lambert_character(long p, long trunc) {
  std::vector<Rational> c(static_cast<std::size_t>(trunc));
  for (long k = 1; k < trunc; ++k) {
    const int ch = legendre(k, p);
    if (ch == 0) continue;
    for (long j = 1; j * k < trunc; ++j) c[static_cast<std::size_t>(j * k)] += ch * j;
  }
  return QSeries::from_coefficients(std::move(c), 0, trunc);
}

// R (1 - k R - R^2) / (1 + R^2)^2
QSeries t_function(const QSeries& r, long k) {
  const QSeries r2 = r * r;
  const QSeries den = r2 + Rational(1);
  return r * (Rational(1) - Rational(k) * r - r2) / (den * den);
}

}  // namespace

int legendre(long n, long p) {
  const Integer a(n), b(p);
  return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

QSeries polynomial_of(std::span<const long> c, const QSeries& f) {
  if (c.empty()) return QSeries::zero(f.trunc());
  QSeries acc = QSeries::constant(c.back(), std::max(f.trunc(), 1L));
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * f + Rational(c[i]);
  return acc;
}

const std::vector<std::string>& ModularCatalog::names() {
  static const std::vector<std::string> all{
      "r",   "s",   "E1",  "E2",  "E3",  "E4",  "E5",  "E6",  "E7",  "E8", "Omega",
      "z",   "x",   "w",   "R5",  "S5",  "T5",  "Z5",  "U5",  "V5",  "W5", "R13",
      "S13", "T13", "Z13", "U13", "V13", "W13"};
  return all;
}

bool ModularCatalog::known(std::string_view name) {
  for (const auto& n : names())
    if (n == name) return true;
  return false;
}

QSeries ModularCatalog::build(std::string_view name, long trunc) {
  if (!known(name)) throw std::invalid_argument("unknown modular object: " + std::string(name));
  if (trunc <= 0) throw std::invalid_argument("truncation order must be positive");
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(name);
    if (it != cache_.end() && it->second.trunc() >= trunc) return it->second.truncated(trunc);
  }
  const std::string key(name);
  QSeries value = compute(key, trunc);
  if (value.trunc() < trunc) throw std::logic_error("catalog lost precision building " + key);
  value = value.truncated(trunc);
  {
    std::unique_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end() || it->second.trunc() < value.trunc()) cache_[key] = value;
  }
  return value;
}

QSeries ModularCatalog::compute(const std::string& name, long trunc) {
  const long n = trunc + kGuard;
  if (name == "r") return character_product(17, 1, 2, n);
  if (name == "s") return eta_ratio(17, 3, 2, n);
  if (name.size() == 2 && name[0] == 'E') {
    const auto& e = kEisenstein.at(static_cast<std::size_t>(name[1] - '1'));
    const long m = n - e.lead;
    return shift(pochhammer_block(e.numerator, 17, 1, m) * pochhammer_block(e.denominator, 17, -1, m),
                 e.lead);
  }
  if (name == "Omega") {
    // E1E2 - E2E3 + E3E4 - E4E5 + E5E6 - E6E7 - E7E8 - E8E1
    constexpr std::array<int, 8> sign{1, -1, 1, -1, 1, -1, -1, -1};
    std::array<QSeries, 8> e;
    for (std::size_t k = 0; k < 8; ++k) e[k] = build("E" + std::to_string(k + 1), n);
    QSeries acc = QSeries::zero(n);
    for (std::size_t k = 0; k < 8; ++k) acc += Rational(sign[k]) * (e[k] * e[(k + 1) % 8]);
    return acc;
  }
  if (name == "z") return theta_q_log(build("s", n + 1));
  if (name == "x") return build("Omega", n) / build("z", n);
  if (name == "w") return Rational(2) * theta_q_log(build("x", n + 1)) / build("z", n);

  if (name == "R5") return character_product(5, 5, 1, n);
  if (name == "S5") return eta_ratio(5, 6, 1, n);
  if (name == "T5") return t_function(build("R5", n), 11);
  if (name == "Z5") return theta_q_log(build("S5", n + 1));
  if (name == "U5") return make_rational(1, 5) * theta_q_log(build("R5", n + 1));
  if (name == "V5") return lambert_character(5, n);
  if (name == "W5") return theta_q_log(build("T5", n + 1)) / build("Z5", n);

  if (name == "R13") return character_product(13, 1, 1, n);
  if (name == "S13") return eta_ratio(13, 2, 1, n);
  if (name == "T13") return t_function(build("R13", n), 3);
  if (name == "Z13") return theta_q_log(build("S13", n + 1));
  if (name == "U13") return theta_q_log(build("R13", n + 1));
  if (name == "V13") return lambert_character(13, n);
  if (name == "W13") return theta_q_log(build("T13", n + 1)) / build("Z13", n);
  throw std::invalid_argument("unknown modular object: " + name);
}

ModularCatalog& default_catalog() {
  static ModularCatalog catalog;
  return catalog;
}

}  // namespace level17
