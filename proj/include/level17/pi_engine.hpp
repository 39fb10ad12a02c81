#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "level17/catalog.hpp"
#include "level17/highprec.hpp"
#include "level17/identities.hpp"
#include "level17/modular_equations.hpp"
#include "level17/singular_values.hpp"
#include "level17/surd.hpp"

namespace level17 {

/// coef * sqrt(radicand) with the principal square root.
struct ScaledRoot {
  Surd coef;
  Surd radicand = Surd(1);

  Complex value() const;
  bool is_zero() const { return coef.is_zero() || radicand.is_zero(); }
  /// Pulls rational squares and squares in a single quadratic field out of the root.
  ScaledRoot simplified() const;
  std::string to_string() const;
};

/// Exact comparison: equal squares, with the sign settled numerically.
bool same_value(const ScaledRoot& a, const ScaledRoot& b);
nlohmann::json to_json(const ScaledRoot& r);
ScaledRoot scaled_root_from_json(const nlohmann::json& j);

enum class SeriesCoefficients { Level17, Level5 };

/// 1/pi = sum_k c_k (B k + C) X^k with c_k = A_k (level 17) or a(k) (level 5).
struct PiSeriesSpec {
  std::string name;
  Surd x;
  ScaledRoot b, c;
  SeriesCoefficients coeffs = SeriesCoefficients::Level17;
  std::string provenance;
};
nlohmann::json to_json(const PiSeriesSpec& s);
/// Schema {"X": surd, "B": surd, "C": surd, "coeffs": "level17"|"level5"}, where
/// B and C may carry an extra "radicand" surd.
PiSeriesSpec pi_spec_from_json(const nlohmann::json& j);

struct SeriesValue {
  Complex value;
  long terms = 0;
  Real tail_estimate;  // |last term| r / (1 - r), r = |X| / radius
};

/// Sums until ten consecutive terms fall below 10^-(digits+5) (or exactly
/// `max_terms` terms when given). Throws std::domain_error if |X| is not
/// inside the radius of convergence.
SeriesValue eval_series(const PiSeriesSpec& spec, unsigned digits, std::optional<long> max_terms = std::nullopt);

/// Data for the B, C formulas: a matrix in <Gamma0(17), W17> with
/// (a tau + b)/(c tau + d) = (alpha tau + beta)/delta at the CM point tau.
struct BCInput {
  Mat2 matrix;
  long alpha = 1, beta = 0, delta = 1;
  Surd tau;
  Rational epsilon;  // z(g tau) = epsilon (c tau + d)^2 z(tau)
  int eta = 1;       // w(g tau) = eta w(tau)
  Surd x;            // x(tau)
  ScaledRoot w;      // w(tau) = +-sqrt(quartic(x))
  std::optional<PsiPartials> partials;  // degree-n equation at (x, x)
};

struct BCResult {
  ScaledRoot b;
  std::optional<ScaledRoot> c;  // needs the partial derivatives
};

/// epsilon and eta forced by the matrix: 1, 1 for det 1 and -1/17, -1 for det 17.
std::pair<Rational, int> multipliers(const Mat2& m);

/// Checks the matrix relation exactly and returns B, C. B takes P_X / P_Y from
/// the branch slope (alpha/delta)(c tau + d)^2 / det, which stays defined where
/// the equation is singular at (X, X). C needs partials with P_Y != 0 and is
/// omitted otherwise. Throws
/// std::invalid_argument for inconsistent input and std::domain_error when a
/// real X gives a non-real B or C.
BCResult compute_bc(const BCInput& in);

/// Builds the input at tau(form) for the given matrix and triple: epsilon,
/// eta from the matrix, W's sign from a numeric w(tau), partials from the
/// degree-n equation when its degree is within the solver's range.
BCInput bc_input(const Surd& tau, const Mat2& matrix, long alpha, long beta, long delta, const Surd& x,
                 ModularCatalog& catalog = default_catalog());

/// Where a level-17 series comes from: (a tau + b)/(c tau + d) = (alpha tau + beta)/delta.
struct PiConfig {
  Surd tau;
  Mat2 matrix;
  long alpha, beta, delta;
};

struct PiRow {
  PiSeriesSpec spec;
  std::optional<Surd> printed_numerator;  // constant term as printed, when the fixture differs
  std::optional<PiConfig> config;         // absent for the level-5 series
};

/// The eleven level-17 series (the paired rows expanded) followed by the level-5 series.
const std::vector<PiRow>& pi_rows();

struct PiRowReport {
  std::size_t index = 0;
  std::string name;
  unsigned digits = 0;
  unsigned agreement = 0;
  long terms = 0;
  std::string tail_estimate;
  Complex value;
  std::string derived_b;  // "match", "mismatch" or "not-computed"
  std::string derived_c;
  CheckStatus status = CheckStatus::Fail;

  bool passed() const { return status == CheckStatus::Pass; }
};
nlohmann::json to_json(const PiRowReport& r);

/// Sums one row against 1/pi computed independently (Chudnovsky, digits+10) and,
/// when `with_derivation`, recomputes B and C from the matrix data for comparison.
PiRowReport verify_pi_row(std::size_t index, unsigned digits, bool with_derivation = true,
                          ModularCatalog& catalog = default_catalog());

}  // namespace level17
