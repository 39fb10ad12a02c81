#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <thread>

#include "level17/identities.hpp"

using namespace level17;

namespace {

long sigma(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// Brute force prod_{n < trunc} (1 - q^n)^(e(n)) by repeated multiplication.
QSeries brute_product(long lead, long trunc, const std::function<long(long)>& exponent) {
  QSeries acc = QSeries::constant(1, trunc);
  const QSeries one = QSeries::constant(1, trunc);
  for (long n = 1; n < trunc; ++n) {
    const long e = exponent(n);
    const QSeries factor = one - QSeries::monomial(1, n, trunc);
    for (long k = 0; k < std::abs(e); ++k) acc = e > 0 ? acc * factor : acc / factor;
  }
  return acc * QSeries::monomial(1, lead, trunc + lead);
}

}  // namespace

TEST_CASE("leading terms and small expansions") {
  ModularCatalog cat;
  const QSeries z = cat.build("z", 40);
  CHECK(z.coeff(0) == 2);
  for (long n = 1; n < 40; ++n) CHECK(z.coeff(n) == 3 * (sigma(n) - (n % 17 == 0 ? 17 * sigma(n / 17) : 0)));

  CHECK(cat.build("E2", 10).valuation() == 1);
  CHECK(cat.build("E2", 10).leading_coefficient() == 1);
  const QSeries x = cat.build("x", 10);
  CHECK(x.valuation() == 1);
  CHECK(x.leading_coefficient() == make_rational(1, 2));
  CHECK(x.coeff(2) == make_rational(-5, 4));
  CHECK(x.coeff(3) == make_rational(-3, 8));
  CHECK(x.coeff(4) == make_rational(43, 16));

  const QSeries omega = cat.build("Omega", 8);
  const std::vector<long> expected{0, 1, -1, 0, -1, -2, 0, 4};
  for (long n = 0; n < 8; ++n) CHECK(omega.coeff(n) == expected[static_cast<std::size_t>(n)]);

  const QSeries w = cat.build("w", 5);
  CHECK(w.coeff(0) == 1);
  CHECK(w.coeff(1) == -4);
  CHECK(w.coeff(2) == make_rational(-25, 4));

  const QSeries s = cat.build("s", 10);
  CHECK(s.valuation() == 2);
  CHECK(s.leading_coefficient() == 1);
  CHECK_THROWS_AS(cat.build("nope", 10), std::invalid_argument);
  CHECK_THROWS_AS(cat.build("x", 0), std::invalid_argument);
}

TEST_CASE("products agree with brute-force multiplication") {
  ModularCatalog cat;
  const long trunc = 50;
  CHECK(cat.build("r", trunc) == brute_product(2, trunc - 2, [](long n) { return legendre(n, 17); }));
  CHECK(cat.build("R13", trunc) == brute_product(1, trunc - 1, [](long n) { return legendre(n, 13); }));
  CHECK(cat.build("R5", trunc) == brute_product(1, trunc - 1, [](long n) { return 5 * legendre(n, 5); }));
  CHECK(cat.build("S5", trunc) ==
        brute_product(1, trunc - 1, [](long n) { return (n % 5 == 0 ? 6 : 0) - 6; }));
}

TEST_CASE("cache extends without contradicting") {
  ModularCatalog cat;
  const QSeries low = cat.build("x", 30);
  const QSeries high = cat.build("x", 80);
  CHECK(high.truncated(30) == low);
  CHECK(cat.build("x", 30) == low);
}

TEST_CASE("concurrent readers see identical series") {
  ModularCatalog cat;
  std::vector<QSeries> out(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < out.size(); ++i)
    threads.emplace_back([&, i] { out[i] = cat.build("w", 40 + static_cast<long>(i) * 10); });
  for (auto& t : threads) t.join();
  for (std::size_t i = 1; i < out.size(); ++i) CHECK(out[i].truncated(40) == out[0]);
}

TEST_CASE("cusp form and Eisenstein support") {
  ModularCatalog cat;
  const QSeries omega = cat.build("Omega", 60);
  CHECK(omega.valuation() >= 1);
  const QSeries z = cat.build("z", 60);
  CHECK((z - Rational(2)).valuation() >= 1);
}

TEST_CASE("every identity holds at moderate order") {
  ModularCatalog cat;
  for (const auto& info : identity_catalog()) {
    CAPTURE(info.name);
    const auto report = verify_identity(info.name, 60, cat);
    CHECK_FALSE(report.residual_valuation.has_value());
    CHECK(report.status == (info.required_order > 60 ? CheckStatus::InsufficientOrder : CheckStatus::Pass));
  }
  CHECK_THROWS_AS(verify_identity("no-such-identity", 10, cat), std::invalid_argument);
}

TEST_CASE("quartic at the constant term") {
  ModularCatalog cat;
  const auto report = verify_identity("quartic-w", 1, cat);
  CHECK(report.passed());
}

TEST_CASE("printed level-5 sign is rejected") {
  // (theta log T / Z)^2 = 1 - 44T + 16T^2 fails; the minus sign holds.
  ModularCatalog cat;
  const QSeries w = cat.build("W5", 20), t = cat.build("T5", 20);
  const std::vector<long> printed{1, -44, 16};
  const QSeries residual = w * w - polynomial_of(printed, t);
  CHECK(residual.valuation() == 2);
}

TEST_CASE("level-5 T Z^2 = U V without the factor 5 fails") {
  ModularCatalog cat;
  const QSeries z = cat.build("Z5", 20);
  const QSeries residual = cat.build("T5", 20) * z * z - cat.build("U5", 20) * cat.build("V5", 20);
  CHECK(residual.valuation() == 1);
}

TEST_CASE("differential equation for z") {
  ModularCatalog cat;
  const auto report = verify_ode(60, z_ode(), cat);
  CHECK(report.passed());
  CHECK_THROWS_AS(verify_ode(20, z_ode(), cat), std::invalid_argument);

  OdeCoefficients mutated = z_ode();
  mutated.c[0][0] += 1;
  const auto bad = verify_ode(40, mutated, cat);
  REQUIRE(bad.residual_valuation.has_value());
  CHECK(*bad.residual_valuation <= 3);
}

TEST_CASE("report json") {
  ModularCatalog cat;
  const auto j = to_json(verify_identity("x-r-quadratic", 20, cat));
  CHECK(j["status"] == "INSUFFICIENT_ORDER");
  CHECK(j["residual_valuation"] == "inf");
  CHECK(j["required_order"] == 481);
}
