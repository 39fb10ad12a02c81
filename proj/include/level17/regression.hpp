#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "level17/identities.hpp"

namespace level17 {

/// Settings shared by the command-line tools.
struct RunConfig {
  std::optional<long> order;  // truncation; each check has its own default when unset
  unsigned digits = 30;
  std::string format = "json";  // json, csv or text
  unsigned jobs = 1;
};

/// Throws std::invalid_argument unless digits >= 10, order >= 10 (when set),
/// jobs >= 1 and the format is known.
void validate(const RunConfig& config);

/// Digits from LEVEL17_DIGITS, or `fallback` when it is unset.
/// Throws std::invalid_argument on a malformed value.
unsigned default_digits(unsigned fallback = 30);

struct CheckResult {
  std::string anchor;  // the claim being checked
  std::string check;   // short identifier
  CheckStatus status = CheckStatus::Fail;
  nlohmann::json details;
};

struct Check {
  std::string anchor;
  std::string check;
  std::function<CheckResult(const RunConfig&)> run;
};

/// Identities, differential equation, coefficients, radius, modular equations,
/// singular values, fixing matrices and the 1/pi series.
std::vector<Check> regression_checks();

/// Runs checks on up to config.jobs threads; results keep the input order.
/// A check that throws is reported as a failure with the message in "error".
std::vector<CheckResult> run_checks(const std::vector<Check>& checks, const RunConfig& config);

nlohmann::json to_json(const CheckResult& r);
nlohmann::json regression_report(const std::vector<CheckResult>& results, const RunConfig& config);
std::string format_results(const std::vector<CheckResult>& results, const RunConfig& config);
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace level17
