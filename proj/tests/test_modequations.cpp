#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "level17/modular_equations.hpp"

using namespace level17;

namespace {

long mod_p(const Integer& v, long p) { return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p))); }

// Kronecker congruence for a Hauptmodul with integral expansion at the cusp:
// P_p(X, Y) = c (X^(p+1) + Y^(p+1) - XY - X^p Y^p) mod p.
void check_kronecker_congruence(const BivarPoly& poly, long p) {
  const long c = mod_p(poly.coeff(0, static_cast<int>(p + 1)), p);
  REQUIRE(c != 0);
  for (int i = 0; i <= p + 1; ++i)
    for (int j = 0; j <= p + 1; ++j) {
      long expected = 0;
      if ((i == 0 && j == p + 1) || (i == p + 1 && j == 0)) expected = c;
      if ((i == 1 && j == 1) || (i == p && j == p)) expected = (p - c) % p;
      CHECK_MESSAGE(mod_p(poly.coeff(i, j), p) == expected, "p=" << p << " (" << i << "," << j << ")");
    }
}

}  // namespace

TEST_CASE("stored equations") {
  const BivarPoly p2 = psi(2), p3 = psi(3);
  CHECK(p2.coeff(3, 3) == -9);
  CHECK(p3.coeff(4, 4) == 435);
  CHECK(p2.coeff(3, 2) == -12);
  CHECK(p2.coeff(2, 3) == -12);
  CHECK(p2.is_symmetric());
  CHECK(p3.is_symmetric());
  CHECK(p2.degree_x() == psi_degree(2));
  CHECK(p3.degree_y() == psi_degree(3));
  CHECK_THROWS_AS(psi(5), std::invalid_argument);
  CHECK(psi_degree(6) == 12);
  CHECK(psi_degree(19) == 20);
  CHECK(psi_degree(9) == 12);
  check_kronecker_congruence(p3, 3);
}

TEST_CASE("stored equations vanish on the expansions") {
  CHECK(verify_psi(2, 120).status == CheckStatus::Pass);
  CHECK(verify_psi(3, 120).status == CheckStatus::Pass);
  CHECK_THROWS_AS(verify_psi(2, 10), std::invalid_argument);
}

TEST_CASE("a single flipped sign is detected") {
  // X^i Y^j starts at q^(i + 2j), where the flipped term leaves 2 c X^i Y^j.
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      if (psi(2).coeff(i, j) == 0) continue;
      std::map<std::pair<int, int>, Integer> c;
      const BivarPoly p2 = psi(2);
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) c[{a, b}] = p2.coeff(a, b);
      c[{i, j}] = -c[{i, j}];
      const auto report = verify_psi(2, 40, BivarPoly(c));
      CHECK(report.status == CheckStatus::Fail);
      REQUIRE(report.residual_valuation);
      CHECK(*report.residual_valuation == i + 2 * j);
      if (i + 2 * j <= 6) CHECK(*report.residual_valuation <= 6);
    }
}

TEST_CASE("degree-2 equation rebuilt by pole elimination") {
  const Psi2Derivation d = derive_psi2(60);
  CHECK(d.polynomial.to_string() == psi(2).to_string());
  // Integral exponents throughout, with the stated principal parts.
  CHECK(d.neg_e1.coeff_at(-2) == -2);
  CHECK(d.neg_e1.coeff_at(-1) == 0);
  CHECK(d.neg_e1.coeff_at(0) == -15);
  CHECK(d.neg_e1.coeff_at(make_rational(-1, 2)) == 0);
  CHECK(d.e2.coeff_at(-2) == 20);
  CHECK(d.e2.coeff_at(-1) == 108);
  CHECK(d.e2.coeff_at(0) == 419);
  CHECK(d.neg_e3.coeff_at(-3) == 8);
  CHECK(d.neg_e3.coeff_at(-2) == 62);
  CHECK(d.neg_e3.coeff_at(-1) == 316);
  CHECK(d.neg_e3.coeff_at(0) == 1307);
  CHECK(derive_psi2(40).polynomial.to_string() == d.polynomial.to_string());
  CHECK(derive_psi2(90).polynomial.to_string() == d.polynomial.to_string());
  CHECK_THROWS_AS(derive_psi2(20), std::invalid_argument);
}

TEST_CASE("diagonals") {
  const DiagonalData d2 = diagonal(2);
  CHECK(d2.factorization.to_string() == "-X^2(X - 1)(X + 1)(9*X^2 + 24*X - 1)");
  CHECK(d2.diagonal.degree() == 2 * psi_degree(2));
  CHECK(d2.diagonal.evaluate(Rational(1)) == 0);
  CHECK(d2.factorization.expand() == d2.diagonal);

  const DiagonalData d3 = diagonal(3);
  CHECK(d3.factorization.to_string() == "X^2(X + 1)^2(5*X + 1)(87*X^3 - 99*X^2 + 37*X - 1)");
  CHECK(d3.factorization.expand() == d3.diagonal);
}

TEST_CASE("partial derivatives on the diagonal") {
  const BivarPoly p2 = psi(2);
  const PsiPartials at0 = partials_at(2, Surd(0));
  CHECK(at0.x == Surd(0));
  CHECK(at0.y == Surd(0));
  CHECK(at0.xy == Surd(-1));

  // Term-by-term derivative as an oracle at X0 = -1/21.
  const Rational x0 = make_rational(-1, 21);
  Rational px = 0, pxy = 0;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      const Rational c(p2.coeff(i, j));
      if (i >= 1) {
        Rational t = c * i;
        for (int k = 0; k < i - 1 + j; ++k) t *= x0;
        px += t;
      }
      if (i >= 1 && j >= 1) {
        Rational t = c * i * j;
        for (int k = 0; k < i + j - 2; ++k) t *= x0;
        pxy += t;
      }
    }
  const PsiPartials at = partials_at(2, Surd(x0));
  CHECK(at.x == Surd(px));
  CHECK(at.y == at.x);
  CHECK(at.xy == Surd(pxy));
  CHECK(at.xx == at.yy);
  CHECK(at.x.is_rational());

  const Surd q = Surd::quadratic(make_rational(-4, 3), make_rational(1, 3), 17);
  const PsiPartials aq = partials_at(3, q);
  CHECK(aq.x == aq.y);
  CHECK(aq.xx == aq.yy);
}

TEST_CASE("solved equations") {
  for (long n : {5L, 7L}) {
    const BivarPoly p = modular_polynomial(n);
    CHECK(p.is_symmetric());
    CHECK(p.degree_x() == psi_degree(n));
    CHECK(p.coeff(1, 1) < 0);
    check_kronecker_congruence(p, n);
    CHECK(verify_psi(n, 150, p).status == CheckStatus::Pass);
    const DiagonalData d = diagonal(n);
    CHECK(d.factorization.expand() == d.diagonal);
    CHECK(d.diagonal.degree() == 2 * psi_degree(n));
  }
  // The stored equations are what the solver finds.
  CHECK(solve_psi(2).to_string() == psi(2).to_string());
  CHECK(solve_psi(3).to_string() == psi(3).to_string());
  // Composite degree.
  const BivarPoly p6 = modular_polynomial(6);
  CHECK(p6.degree_y() == 12);
  CHECK(verify_psi(6, 120, p6).status == CheckStatus::Pass);
  CHECK_THROWS_AS(solve_psi(17), std::invalid_argument);
  CHECK_THROWS_AS(solve_psi(29), std::invalid_argument);
}
