#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "level17/catalog.hpp"

namespace level17 {

enum class CheckStatus { Pass, Fail, InsufficientOrder };

std::string to_string(CheckStatus status);

/// Outcome of checking that a combination of series vanishes.
struct IdentityReport {
  std::string name;
  std::string anchor;  // human-readable statement of what was checked
  long trunc = 0;
  /// Exponent of the first nonzero residual coefficient; nullopt means the
  /// residual vanishes identically to `trunc`.
  std::optional<Rational> residual_valuation;
  /// Order needed for the check to be a proof (Sturm bound) or 0 if none.
  long required_order = 0;
  CheckStatus status = CheckStatus::Fail;

  bool passed() const { return status == CheckStatus::Pass; }
};

nlohmann::json to_json(const IdentityReport& report);

/// Builds a report from a residual series that should vanish to `trunc`.
IdentityReport make_report(std::string name, std::string anchor, long trunc, const QSeries& residual,
                           long required_order = 0);

struct IdentityInfo {
  std::string name;
  std::string anchor;
  long required_order;
};

const std::vector<IdentityInfo>& identity_catalog();

/// Throws std::invalid_argument for an unknown identity name or trunc <= 0.
IdentityReport verify_identity(const std::string& name, long trunc,
                               ModularCatalog& catalog = default_catalog());

/// Polynomial coefficients (constant term first) of the third-order
/// differential equation c0 f + c1 f' + c2 f'' + c3 f''' = 0 satisfied by z,
/// where ' is x d/dx.
struct OdeCoefficients {
  std::array<std::vector<long>, 4> c;
};

const OdeCoefficients& z_ode();

/// Applies the operator to f = z with x d/dx = (2/(w z)) q d/dq.
/// Throws std::invalid_argument for trunc < 30.
IdentityReport verify_ode(long trunc, const OdeCoefficients& ode = z_ode(),
                          ModularCatalog& catalog = default_catalog());

}  // namespace level17
