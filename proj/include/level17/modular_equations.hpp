#pragma once

#include "level17/identities.hpp"
#include "level17/polynomial.hpp"

namespace level17 {

/// psi(n) = n prod_{p | n} (1 + 1/p), the degree of the modular equation in each variable.
long psi_degree(long n);

/// The stored modular equations of degree 2 and 3. Throws std::invalid_argument otherwise.
BivarPoly psi(long n);

/// Modular equation of degree n between x(tau) and x(n tau): the stored one
/// for n = 2, 3, otherwise solved by undetermined coefficients (see
/// solve_psi). Results are cached.
BivarPoly modular_polynomial(long n, ModularCatalog& catalog = default_catalog());

/// Largest psi(n) accepted by solve_psi.
constexpr long kMaxSolvedDegree = 24;

/// Finds the symmetric polynomial P of bidegree psi(n) with P(x(tau), x(n tau)) = 0
/// as the one-dimensional kernel of a linear system on q-expansion
/// coefficients, solved modulo word-size primes with Chinese remaindering and
/// rational reconstruction, then checked exactly on the rational series.
/// Normalised to a primitive integer polynomial with negative XY coefficient.
/// Requires gcd(n, 17) = 1, n >= 2 and psi(n) <= kMaxSolvedDegree.
BivarPoly solve_psi(long n, ModularCatalog& catalog = default_catalog());

/// Checks P(x(tau), x(n tau)) = O(q^trunc). Uses modular_polynomial(n) when P is omitted.
IdentityReport verify_psi(long n, long trunc, ModularCatalog& catalog = default_catalog());
IdentityReport verify_psi(long n, long trunc, const BivarPoly& p, ModularCatalog& catalog = default_catalog());

/// Rebuilds the degree-2 equation from the expansions of x(tau/2), x(2 tau)
/// and x((tau+1)/2): each elementary symmetric function of their reciprocals
/// is reduced to a polynomial in 1/x by greedy pole elimination. Throws
/// std::runtime_error if some symmetric function does not reduce.
struct Psi2Derivation {
  BivarPoly polynomial;
  QSeries neg_e1;  // -(1/x1 + 1/x2 + 1/x3)
  QSeries e2;      // sum over pairs 1/(xi xj)
  QSeries neg_e3;  // -1/(x1 x2 x3)
};
Psi2Derivation derive_psi2(long trunc, ModularCatalog& catalog = default_catalog());

struct DiagonalData {
  Poly diagonal;
  Factorization factorization;
};

/// P(X, X) and its factorization over the integers.
DiagonalData diagonal(long n, ModularCatalog& catalog = default_catalog());

struct PsiPartials {
  Surd x, y, xx, xy, yy;
};

/// First and second partial derivatives of the degree-n equation at (X0, X0).
PsiPartials partials_at(long n, const Surd& x0, ModularCatalog& catalog = default_catalog());
PsiPartials partials_at(const BivarPoly& p, const Surd& x0);

}  // namespace level17
