#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "level17/qseries.hpp"

using namespace level17;

namespace {

QSeries poly(std::vector<long> c, long val, long trunc, long denom = 1) {
  std::vector<Rational> r(c.begin(), c.end());
  return QSeries::from_coefficients(std::move(r), val, trunc, denom);
}

// Euler's pentagonal number theorem: sum (-1)^k q^(k(3k-1)/2) over all k.
std::map<long, long> pentagonal(long limit) {
  std::map<long, long> out;
  for (long k = -limit; k <= limit; ++k) {
    const long e = k * (3 * k - 1) / 2;
    if (e < limit) out[e] += (k % 2 == 0) ? 1 : -1;
  }
  return out;
}

long sigma(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

QSeries random_series(std::mt19937& rng, long trunc) {
  std::uniform_int_distribution<long> dist(-5, 5);
  std::vector<Rational> c(static_cast<std::size_t>(trunc));
  for (auto& x : c) x = dist(rng);
  c[0] = dist(rng) < 0 ? 1 : 9;
  return QSeries::from_coefficients(std::move(c), 0, trunc);
}

}  // namespace

TEST_CASE("pochhammer block with modulus one is Euler's product") {
  const long trunc = 100;
  const std::vector<long> offsets{1};
  const QSeries eta = pochhammer_block(offsets, 1, 1, trunc);
  const auto oracle = pentagonal(trunc);
  for (long n = 0; n < trunc; ++n) {
    const auto it = oracle.find(n);
    CHECK(eta.coeff(n) == (it == oracle.end() ? 0 : it->second));
  }
}

TEST_CASE("pochhammer block edge cases") {
  const std::vector<long> none;
  CHECK(pochhammer_block(none, 17, 1, 10) == QSeries::constant(1, 10));
  const std::vector<long> offsets{1};
  CHECK_THROWS_AS(pochhammer_block(offsets, 1, 1, 0), std::invalid_argument);
  const std::vector<long> bad{18};
  CHECK_THROWS_AS(pochhammer_block(bad, 17, 1, 10), std::invalid_argument);

  // Brute product of (1 - q^n) for n = 8, 9, 17, 17, 25, 26, 34, 34, ...
  const std::vector<long> e1{8, 9, 17, 17};
  const long trunc = 60;
  QSeries brute = QSeries::constant(1, trunc);
  for (long n = 1; n < trunc; ++n) {
    const long r = n % 17;
    const int mult = (r == 8 || r == 9) ? 1 : (r == 0 ? 2 : 0);
    for (int k = 0; k < mult; ++k) brute = brute * (QSeries::constant(1, trunc) - QSeries::monomial(1, n, trunc));
  }
  CHECK(pochhammer_block(e1, 17, 1, trunc) == brute);
  CHECK(pochhammer_block(e1, 17, -1, trunc) * brute == QSeries::constant(1, trunc));
}

TEST_CASE("arithmetic and truncation bookkeeping") {
  const long trunc = 30;
  const QSeries one_minus_q = poly({1, -1}, 0, trunc);
  const QSeries geometric = poly(std::vector<long>(trunc, 1), 0, trunc);
  CHECK(one_minus_q * geometric == QSeries::constant(1, trunc));
  CHECK(inverse(one_minus_q) == geometric);

  // Mixed precision takes the minimum, shifted by valuations.
  const QSeries a = poly({1, 2, 3}, 0, 10);
  const QSeries b = poly({1, 1}, 2, 20);
  const QSeries prod = a * b;
  CHECK(prod.valuation() == 2);
  CHECK(prod.trunc() == 12);
  CHECK((a + b).trunc() == 10);

  const QSeries f = poly({2, 3, -1, 5}, -1, 25);
  const QSeries g = inverse(f);
  CHECK(g.valuation() == 1);
  CHECK(f * g == QSeries::constant(1, 26));
  CHECK((f * g).trunc() == 25 - (-1));

  CHECK_THROWS_AS(inverse(QSeries::zero(10)), std::domain_error);
  CHECK((f - f).is_zero());
}

TEST_CASE("theta_q_log") {
  CHECK(theta_q_log(QSeries::monomial(1, 2, 20)) == QSeries::constant(2, 18));

  const long trunc = 40;
  const QSeries one_minus_q = poly({1, -1}, 0, trunc);
  const QSeries expected = -poly(std::vector<long>(trunc, 1), 0, trunc) + Rational(1);
  CHECK(theta_q_log(one_minus_q) == expected);

  // theta log s = 2 + 3 sum (sigma(n) - 17 sigma(n/17)) q^n
  const std::vector<long> all{1};
  const std::vector<long> top{17};
  const QSeries s = QSeries::monomial(1, 2, trunc + 2) *
                    pow(pochhammer_block(top, 17, 1, trunc), 3) *
                    pow(pochhammer_block(all, 1, -1, trunc), 3);
  const QSeries z = theta_q_log(s);
  CHECK(z.trunc() == trunc);
  CHECK(z.coeff(0) == 2);
  for (long n = 1; n < trunc; ++n)
    CHECK(z.coeff(n) == 3 * (sigma(n) - (n % 17 == 0 ? 17 * sigma(n / 17) : 0)));

  CHECK_THROWS_AS(theta_q_log(QSeries::zero(5)), std::domain_error);

  std::mt19937 rng(17);
  for (int i = 0; i < 5; ++i) {
    const QSeries f = random_series(rng, 25);
    const QSeries h = random_series(rng, 25);
    CHECK(theta_q_log(f * h) == theta_q_log(f) + theta_q_log(h));
  }
}

TEST_CASE("sqrt") {
  CHECK(sqrt(poly({1, 2, 1}, 0, 20)) == poly({1, 1}, 0, 20));
  CHECK(sqrt(poly({1, 2, 1}, 0, 20), -1) == -poly({1, 1}, 0, 20));

  // (1 - 4q)^(1/2) = 1 - 2 sum Catalan(n-1) q^n
  const long trunc = 30;
  const QSeries root = sqrt(poly({1, -4}, 0, trunc));
  Integer catalan = 1;
  CHECK(root.coeff(0) == 1);
  for (long n = 1; n < trunc; ++n) {
    CHECK(root.coeff(n) == -2 * catalan);
    catalan = catalan * 2 * (2 * n - 1) / (n + 1);
  }

  std::mt19937 rng(5);
  for (int i = 0; i < 5; ++i) {
    const QSeries f = random_series(rng, 20) * QSeries::monomial(4, 2, 22);
    const QSeries r = sqrt(f);
    CHECK(r * r == f);
  }
  CHECK_THROWS_AS(sqrt(poly({2, 1}, 0, 10)), std::domain_error);
  CHECK_THROWS_AS(sqrt(poly({1, 1}, 1, 10)), std::domain_error);
}

TEST_CASE("rescale and substitute") {
  CHECK(rescale(poly({1, 1}, 1, 10), 2) == poly({1, 0, 1}, 2, 20));
  const QSeries half = rescale(poly({1, 3}, 1, 10), make_rational(1, 2));
  CHECK(half.denom() == 2);
  CHECK(half.coeff_at(make_rational(1, 2)) == 1);
  CHECK(half.coeff_at(1) == 3);
  CHECK(half.trunc_exponent() == 5);

  // q -> -q^(1/2)
  const QSeries sub = substitute(poly({1, 3, 5}, 1, 10), make_rational(1, 2), -1);
  CHECK(sub.coeff_at(make_rational(1, 2)) == -1);
  CHECK(sub.coeff_at(1) == 3);
  CHECK(sub.coeff_at(make_rational(3, 2)) == -5);

  // Mixing denominators unifies to the lcm and reduces again when possible.
  const QSeries mixed = half + poly({1}, 0, 4);
  CHECK(mixed.denom() == 2);
  CHECK((half - half).denom() == 1);
}

TEST_CASE("eta quotient") {
  EtaQuotientSpec spec{{{1, 1}}, make_rational(1, 24)};
  const QSeries eta = eta_quotient(spec, 20);
  CHECK(eta.denom() == 24);
  CHECK(eta.valuation_exponent() == make_rational(1, 24));
  CHECK(eta.coeff_at(make_rational(25, 24)) == -1);
  CHECK(eta.trunc_exponent() == 20 + make_rational(1, 24));
}

TEST_CASE("json round trip") {
  const QSeries f = rescale(poly({1, -2}, -1, 6), make_rational(1, 3)) * make_rational(3, 7);
  const auto j = to_json(f);
  CHECK(j["denom"] == 3);
  CHECK(j["coeffs"][0] == "3/7");
  CHECK(qseries_from_json(j) == f);
  nlohmann::json bad = j;
  bad["coeffs"].push_back("1");
  CHECK_THROWS_AS(qseries_from_json(bad), std::invalid_argument);
}
