#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "level17/polynomial.hpp"

using namespace level17;

TEST_CASE("surd arithmetic") {
  const Surd r17 = Surd::root(17);
  CHECK(r17 * r17 == Surd(17));
  CHECK(Surd::root(68) == Surd::root(17, 2));
  const Surd i7 = Surd::root(-7);
  CHECK(i7 * i7 == Surd(-7));
  CHECK(Surd::root(-1) * Surd::root(7) == i7);
  CHECK(Surd::root(-1) * Surd::root(-7) == Surd::root(7, -1));

  const Surd x = Surd::quadratic(12, 3, 17);
  const Surd inv = inverse(x);
  CHECK(x * inv == Surd(1));
  // (12 + 3 sqrt17)^-1 = (12 - 3 sqrt17)/(144 - 153)
  CHECK(inv == Surd::quadratic(make_rational(-12, 9), make_rational(3, 9), 17));

  const Surd mixed = Surd::root(2) + Surd::root(3) + Surd::root(-7, 2) + Surd(5);
  CHECK(mixed * inverse(mixed) == Surd(1));
  CHECK_THROWS_AS(inverse(Surd()), std::domain_error);

  CHECK(i7.complex_conjugate() == -i7);
  CHECK_FALSE(i7.is_real());
  CHECK(x.is_real());
}

TEST_CASE("surd numerics and json") {
  require_digits(40);
  const Surd x = Surd::quadratic(-4, 1, 17) * Surd(make_rational(1, 3));
  const Complex v = x.to_complex();
  CHECK(to_decimal(v.re, 10) == "0.04103520854");
  const auto j = to_json(x);
  CHECK(j["m"] == 17);
  CHECK(j["p"] == "-4/3");
  CHECK(surd_from_json(j) == x);
  const Surd biq = Surd::root(2) + Surd::root(3);
  CHECK(surd_from_json(to_json(biq)) == biq);
}

TEST_CASE("minimal polynomials") {
  // (12 + 3 sqrt 17)^-1 is a root of 9X^2 + 24X - 1 after scaling.
  const auto mp = minimal_polynomial(inverse(Surd::quadratic(12, 3, 17)));
  CHECK(Poly(mp).primitive() == Poly::from_integers({-1, 24, 9}).primitive() * Poly::from_integers({1}));
  const auto mp2 = minimal_polynomial(Surd::root(2) + Surd::root(3));
  CHECK(Poly(mp2) == Poly::from_integers({1, 0, -10, 0, 1}));
  CHECK(Poly(minimal_polynomial(Surd(make_rational(-1, 21)))) ==
        Poly(std::vector<Rational>{make_rational(1, 21), 1}));
}

TEST_CASE("polynomial division and gcd") {
  const Poly a = Poly::from_integers({-1, 0, 1});
  const Poly b = Poly::from_integers({1, 1});
  auto [q, r] = divmod(a, b);
  CHECK(q == Poly::from_integers({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, Poly::from_integers({1, 2, 1})) == b);
}

TEST_CASE("factorization") {
  // -X^2 (X - 1)(X + 1)(9X^2 + 24X - 1)
  const Poly x = Poly::from_integers({0, 1});
  const Poly p = Poly::from_integers({-1}) * x * x * Poly::from_integers({-1, 1}) * Poly::from_integers({1, 1}) *
                 Poly::from_integers({-1, 24, 9});
  const auto f = factor(p);
  CHECK(f.unit == -1);
  REQUIRE(f.factors.size() == 4);
  CHECK(f.expand() == p);
  CHECK(f.to_string() == "-X^2(X - 1)(X + 1)(9*X^2 + 24*X - 1)");

  // Two irreducible quadratics need the Kronecker search.
  const Poly q = Poly::from_integers({2, 0, 1}) * Poly::from_integers({-3, 1, 5}) * Poly::from_integers({7, 3});
  const auto g = factor(Rational(6) * q);
  CHECK(g.unit == 6);
  CHECK(g.factors.size() == 3);
  CHECK(g.expand() == Rational(6) * q);

  CHECK_THROWS_AS(factor(Poly()), std::domain_error);
}

TEST_CASE("bivariate polynomials") {
  const BivarPoly p({{{1, 0}, 2}, {{0, 1}, 2}, {{2, 3}, -5}, {{3, 2}, -5}});
  CHECK(p.is_symmetric());
  CHECK(p.degree_x() == 3);
  CHECK(p.derivative(1, 0).coeff(1, 3) == -10);
  CHECK(p.diagonal() == Poly::from_integers({0, 4, 0, 0, 0, -10}));
  CHECK(bivar_from_json(to_json(p)) == p);
  CHECK(p.evaluate(Surd(1), Surd(2)) == Surd(2 + 4 - 5 * 8 - 5 * 4));
  const QSeries x = QSeries::monomial(1, 1, 10);
  const QSeries v = p.evaluate(x, x);
  CHECK(v.coeff(1) == 4);
  CHECK(v.coeff(5) == -10);
}
