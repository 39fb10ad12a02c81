#pragma once

#include <map>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "level17/qseries.hpp"

namespace level17 {

/// Memoized q-expansions of the named modular objects.
///
/// Level 17: r, s, E1..E8, Omega, z, x, w.
/// Level 5:  R5 (the fifth power R^5), S5, T5, Z5, U5, V5, W5.
/// Level 13: R13, S13, T13, Z13, U13, V13, W13.
///
/// build(name, trunc) returns the expansion known to O(q^trunc). Lookups take a
/// shared lock; a miss computes outside the lock and publishes the result if it
/// is longer than what is cached, so concurrent callers never block each other
/// on a computation.
class ModularCatalog {
 public:
  QSeries build(std::string_view name, long trunc);

  static const std::vector<std::string>& names();
  static bool known(std::string_view name);

 private:
  QSeries compute(const std::string& name, long trunc);

  std::shared_mutex mutex_;
  std::map<std::string, QSeries, std::less<>> cache_;
};

/// Process-wide catalog shared by the CLI and the numeric evaluators.
ModularCatalog& default_catalog();

/// Kronecker symbol (n/p) for an odd prime p.
int legendre(long n, long p);

/// sum_k c[k] * f^k with integer coefficients listed from the constant term up.
QSeries polynomial_of(std::span<const long> c, const QSeries& f);

}  // namespace level17
