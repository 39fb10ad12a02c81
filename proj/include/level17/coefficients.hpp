#pragma once

#include <string>
#include <vector>

#include "level17/highprec.hpp"
#include "level17/identities.hpp"

namespace level17 {

enum class CoeffSource { Recurrence, Composition, ClosedForm };

std::string to_string(CoeffSource source);

struct CoeffSequence {
  std::vector<Rational> values;
  CoeffSource source = CoeffSource::Recurrence;

  bool all_integral() const;
};

/// A_0..A_N from the seven-term recurrence with A_0 = 2 and A_n = 0 for n < 0.
/// Results are cached; a longer request extends the cached prefix.
CoeffSequence gen_A(long count_minus_one);

/// A_0..A_N obtained independently by matching z = sum A_n x^n coefficientwise
/// against the catalog's q-expansions.
CoeffSequence solve_A_by_composition(long count_minus_one, ModularCatalog& catalog = default_catalog());

/// Checks z - sum_{n<trunc} A_n x^n = O(q^trunc). Throws for trunc < 10.
IdentityReport verify_composition(long trunc, ModularCatalog& catalog = default_catalog());

/// a(n) = C(2n, n) sum_j C(n, j)^2 C(n+j, j) for n = 0..N.
CoeffSequence level5_a(long count_minus_one);

/// 127x^4 + 48x^3 + 66x^2 + 16x - 1, constant term first.
const std::vector<long>& radius_polynomial();

/// Positive real root of radius_polynomial(): the radius of convergence of
/// sum A_n x^n. Computed to at least `digits` digits.
Real radius(unsigned digits);

}  // namespace level17
