#include "level17/regression.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "level17/coefficients.hpp"
#include "level17/highprec.hpp"
#include "level17/modular_equations.hpp"
#include "level17/pi_engine.hpp"
#include "level17/singular_values.hpp"

namespace level17 {
namespace {

CheckStatus status_of(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

CheckResult from_report(const std::string& anchor, const IdentityReport& r) {
  return {anchor, r.name, r.status, to_json(r)};
}

// Below a check's minimum order the claim is untested rather than false.
std::optional<CheckResult> below_minimum(const std::string& anchor, const std::string& id, long trunc, long minimum) {
  if (trunc >= minimum) return std::nullopt;
  return CheckResult{anchor, id, CheckStatus::InsufficientOrder, {{"trunc", trunc}, {"required_order", minimum}}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void add_identity_checks(std::vector<Check>& out) {
  for (const IdentityInfo& info : identity_catalog()) {
    out.push_back({info.anchor, info.name, [info](const RunConfig& cfg) {
                     const long trunc = cfg.order.value_or(std::max(150L, info.required_order));
                     return from_report(info.anchor, verify_identity(info.name, trunc));
                   }});
  }
  const std::string ode = "third-order differential equation for z in x";
  out.push_back({ode, "z-ode", [ode](const RunConfig& cfg) {
                   const long trunc = cfg.order.value_or(61);
                   if (auto r = below_minimum(ode, "z-ode", trunc, 30)) return *r;
                   return from_report(ode, verify_ode(trunc));
                 }});
}

void add_coefficient_checks(std::vector<Check>& out) {
  const std::string comp = "recurrence for A_n agrees with z = sum A_n x^n";
  out.push_back({comp, "z-composition", [comp](const RunConfig& cfg) {
                   const long trunc = cfg.order.value_or(51);
                   CheckResult r = from_report(comp, verify_composition(trunc));
                   const auto a = gen_A(1);
                   r.details["A0"] = to_string(a.values[0]);
                   r.details["A1"] = to_string(a.values[1]);
                   if (a.values[0] != 2 || a.values[1] != 6) r.status = CheckStatus::Fail;
                   return r;
                 }});
  const std::string rad = "radius of convergence: positive root of 127x^4 + 48x^3 + 66x^2 + 16x - 1";
  out.push_back({rad, "radius", [rad](const RunConfig& cfg) {
                   const unsigned digits = std::max(cfg.digits, 60u);
                   const Real r = radius(digits);
                   Real value = 0;
                   for (auto it = radius_polynomial().rbegin(); it != radius_polynomial().rend(); ++it)
                     value = value * r + *it;
                   const bool printed = to_decimal(r, 4) == "0.05122";
                   const bool root = abs(Complex(value)) < boost::multiprecision::pow(Real(10), -50);
                   return CheckResult{rad, "radius", status_of(printed && root),
                                      {{"radius", to_decimal(r, 40)}, {"residual", to_decimal(abs(Complex(value)), 3)}}};
                 }});
}

void add_modular_equation_checks(std::vector<Check>& out) {
  for (long n : {2L, 3L}) {
    const std::string anchor = "degree-" + std::to_string(n) + " modular equation vanishes at (x(tau), x(" +
                               std::to_string(n) + " tau))";
    out.push_back({anchor, "modular-equation-" + std::to_string(n), [anchor, n](const RunConfig& cfg) {
                     const long trunc = cfg.order.value_or(120);
                     if (auto r = below_minimum(anchor, "modular-equation-" + std::to_string(n), trunc, 20)) return *r;
                     return from_report(anchor, verify_psi(n, trunc));
                   }});
  }
  const std::string derive = "degree-2 modular equation from symmetric functions of x(tau/2), x(2 tau), x(tau/2 + 1/2)";
  out.push_back({derive, "derive-psi2", [derive](const RunConfig& cfg) {
                   const long trunc = cfg.order.value_or(40);
                   if (auto r = below_minimum(derive, "derive-psi2", trunc, 40)) return *r;
                   const Psi2Derivation d = derive_psi2(trunc);
                   return CheckResult{derive, "derive-psi2", status_of(d.polynomial == psi(2)),
                                      {{"polynomial", to_json(d.polynomial)}}};
                 }});
  const std::string diag = "degree-2 diagonal factors as -X^2 (X - 1)(X + 1)(9X^2 + 24X - 1)";
  out.push_back({diag, "diagonal-2", [diag](const RunConfig&) {
                   const DiagonalData d = diagonal(2);
                   const Poly x = Poly::from_integers({0, 1});
                   const Poly expected = Rational(-1) * x * x * Poly::from_integers({-1, 1}) *
                                         Poly::from_integers({1, 1}) * Poly::from_integers({-1, 24, 9});
                   std::set<std::string> got, want{x.to_string(), Poly::from_integers({-1, 1}).to_string(),
                           Poly::from_integers({1, 1}).to_string(), Poly::from_integers({-1, 24, 9}).to_string()};
                   for (const PolyFactor& f : d.factorization.factors) got.insert(f.factor.to_string());
                   return CheckResult{diag, "diagonal-2", status_of(d.diagonal == expected && got == want),
                                      {{"diagonal", d.diagonal.to_string()}, {"factorization", d.factorization.to_string()}}};
                 }});
}

void add_singular_checks(std::vector<Check>& out) {
  std::vector<SingularValue> rows = singular_value_table();
  rows.push_back(unit_value());
  for (const SingularValue& sv : rows) {
    const std::string anchor = "x(tau" + sv.form.to_string() + ") = " + sv.claimed_text;
    out.push_back({anchor, "singular-value" + sv.form.to_string(), [anchor, sv](const RunConfig& cfg) {
                     const Certificate c = certify_value(sv.form, sv.claimed, sv.n, std::max(60u, cfg.digits + 20),
                                                         std::max(40u, cfg.digits));
                     return CheckResult{anchor, "singular-value" + sv.form.to_string(), c.status, to_json(c)};
                   }});
  }
  for (const FixingMatrix& row : fixing_matrix_table()) {
    const std::string anchor = row.element.to_string() + " sends tau" + row.form.to_string() + " to tau or -1/(17 tau)";
    out.push_back({anchor, "fixing-matrix" + row.form.to_string(), [anchor, row](const RunConfig&) {
                     const FixingMatrixCheck c = check_fixing_matrix(row);
                     return CheckResult{anchor, "fixing-matrix" + row.form.to_string(), status_of(c.passed()), to_json(c)};
                   }});
  }
}

void add_pi_checks(std::vector<Check>& out) {
  for (std::size_t i = 0; i < pi_rows().size(); ++i) {
    const std::string anchor = "1/pi series, " + pi_rows()[i].spec.name;
    const std::string id = "pi-series-" + std::to_string(i + 1);
    out.push_back({anchor, id, [anchor, id, i](const RunConfig& cfg) {
                     const PiRowReport r = verify_pi_row(i, cfg.digits);
                     return CheckResult{anchor, id, r.status, to_json(r)};
                   }});
  }
  const std::string anchor = "1/pi series, X = -1/21, to 50 digits";
  out.push_back({anchor, "pi-series-1-50", [anchor](const RunConfig& cfg) {
                   const PiRowReport r = verify_pi_row(0, std::max(50u, cfg.digits), false);
                   return CheckResult{anchor, "pi-series-1-50", r.status, to_json(r)};
                 }});
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.digits < 10) throw std::invalid_argument("--digits must be at least 10");
  if (config.order && *config.order < 10) throw std::invalid_argument("--order must be at least 10");
  if (config.jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  if (config.format != "json" && config.format != "csv" && config.format != "text")
    throw std::invalid_argument("--format must be json, csv or text");
}

unsigned default_digits(unsigned fallback) {
  const char* env = std::getenv("LEVEL17_DIGITS");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end || v == 0 || v > 100000) throw std::invalid_argument(std::string("LEVEL17_DIGITS is not a digit count: ") + env);
  return static_cast<unsigned>(v);
}

std::vector<Check> regression_checks() {
  std::vector<Check> out;
  add_identity_checks(out);
  add_coefficient_checks(out);
  add_modular_equation_checks(out);
  add_singular_checks(out);
  add_pi_checks(out);
  return out;
}

std::vector<CheckResult> run_checks(const std::vector<Check>& checks, const RunConfig& config) {
  // Fix the working precision before any thread starts, so results do not
  // depend on scheduling.
  require_digits(std::max(config.digits, 60u) + 40);
  std::vector<CheckResult> results(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < checks.size();) {
      try {
        results[i] = checks[i].run(config);
      } catch (const std::exception& e) {
        results[i] = {checks[i].anchor, checks[i].check, CheckStatus::Fail, {{"error", e.what()}}};
      }
    }
  };
  std::vector<std::thread> threads;
  const unsigned n = std::min<std::size_t>(std::max(config.jobs, 1u), checks.size());
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return results;
}

nlohmann::json to_json(const CheckResult& r) {
  return {{"anchor", r.anchor}, {"check", r.check}, {"status", to_string(r.status)}, {"details", r.details}};
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::Pass; });
}

nlohmann::json regression_report(const std::vector<CheckResult>& results, const RunConfig& config) {
  nlohmann::json checks = nlohmann::json::array();
  std::size_t passed = 0;
  for (const CheckResult& r : results) {
    checks.push_back(to_json(r));
    passed += r.status == CheckStatus::Pass;
  }
  nlohmann::json cfg{{"digits", config.digits}};
  cfg["order"] = config.order ? nlohmann::json(*config.order) : nlohmann::json("default");
  return {{"config", cfg},
          {"checks", checks},
          {"summary", {{"total", results.size()}, {"passed", passed}, {"failed", results.size() - passed}}},
          {"status", all_passed(results) ? "PASS" : "FAIL"}};
}

std::string format_results(const std::vector<CheckResult>& results, const RunConfig& config) {
  if (config.format == "json") return regression_report(results, config).dump(2) + "\n";
  std::ostringstream out;
  if (config.format == "csv") {
    out << "check,status,anchor\n";
    for (const CheckResult& r : results) out << csv_field(r.check) << ',' << to_string(r.status) << ',' << csv_field(r.anchor) << '\n';
  } else {
    for (const CheckResult& r : results) out << to_string(r.status) << "  " << r.check << "  " << r.anchor << '\n';
  }
  return out.str();
}

}  // namespace level17
