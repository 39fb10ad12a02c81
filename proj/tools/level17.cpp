#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "level17/catalog.hpp"
#include "level17/coefficients.hpp"
#include "level17/identities.hpp"
#include "level17/modular_equations.hpp"
#include "level17/pi_engine.hpp"
#include "level17/regression.hpp"
#include "level17/singular_values.hpp"

using namespace level17;
using nlohmann::json;

namespace {

constexpr int kUsage = 2;

// Input problems surface as usage errors (exit 2) rather than failed checks.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json complex_json(const Complex& c, unsigned digits) {
  return {{"re", to_decimal(c.re, digits)}, {"im", to_decimal(c.im, digits)}};
}

int emit(const json& j, bool ok) {
  std::cout << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

int emit_reports(const std::vector<CheckResult>& results, const RunConfig& cfg) {
  std::cout << format_results(results, cfg);
  return all_passed(results) ? 0 : 1;
}

int emit_report(const IdentityReport& r, const RunConfig& cfg) {
  return emit_reports({CheckResult{r.anchor, r.name, r.status, to_json(r)}}, cfg);
}

Mat2 mat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw UsageError("matrix must be [a, b, c, d]");
  return {j[0].get<long>(), j[1].get<long>(), j[2].get<long>(), j[3].get<long>()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-17 modular forms, modular equations, singular values and series for 1/pi"};
  app.require_subcommand(1);

  RunConfig cfg;
  long order = 0;
  unsigned digits = 0;
  int row = 0;
  app.add_option("--order", order, "Truncation order of q-expansions (>= 10)");
  app.add_option("--digits", digits, "Decimal digits of precision (>= 10; default from LEVEL17_DIGITS or 30)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--jobs", cfg.jobs, "Number of worker threads");
  app.add_option("--row", row, "Series row (1-based) for 'pi verify'");

  auto sub = [&](const std::string& name, const std::string& desc, CLI::App* parent = nullptr) {
    CLI::App* s = (parent ? parent : &app)->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  std::string name;
  CLI::App* expand = sub("expand", "Print the q-expansion of a catalog series as JSON");
  expand->add_option("name", name, "Series name")->required();

  CLI::App* verify = sub("verify", "Check one identity (or 'ode', 'composition') to the given order");
  verify->add_option("identity", name, "Identity name")->required();

  long count = 51;
  bool as_json = false, as_csv = false;
  CLI::App* coeffs = sub("coeffs", "Print A_0 .. A_{N-1} from the recurrence");
  coeffs->add_option("--count", count, "Number of coefficients")->check(CLI::Range(1L, 100000L));
  coeffs->add_flag("--json", as_json, "JSON output");
  coeffs->add_flag("--csv", as_csv, "CSV output");

  long n = 2;
  CLI::App* modeq = sub("modeq", "Modular equations P_n(X, Y)");
  modeq->require_subcommand(1);
  CLI::App* mverify = sub("verify", "Check P_n(x(tau), x(n tau)) = 0", modeq);
  CLI::App* mderive = sub("derive", "Derive the degree-2 equation from symmetric functions", modeq);
  CLI::App* mdiag = sub("diagonal", "Factor P_n(X, X)", modeq);
  CLI::App* msolve = sub("equation", "Print P_n as [i, j, coeff] triples", modeq);
  for (CLI::App* s : {mverify, mderive, mdiag, msolve}) s->add_option("-n", n, "Degree")->check(CLI::PositiveNumber);

  std::string form_text;
  long disc = 0;
  CLI::App* singular = sub("singular", "Singular values x(tau)");
  singular->require_subcommand(1);
  CLI::App* seval = sub("eval", "Evaluate x and w at the root of a form", singular);
  seval->add_option("--form", form_text, "a,b,c")->required();
  CLI::App* stable1 = sub("certify-table1", "Certify the listed singular values", singular);
  CLI::App* stable2 = sub("table2", "Check the listed fixing matrices", singular);
  CLI::App* sscan = sub("scan", "Numeric x at every reduced form of a discriminant and its coset images", singular);
  sscan->add_option("-d", disc, "Negative discriminant")->required();

  std::string spec_path, config_path;
  CLI::App* pi = sub("pi", "Series for 1/pi");
  pi->require_subcommand(1);
  CLI::App* pverify = sub("verify", "Sum the listed series against 1/pi", pi);
  pverify->add_option("--row", row, "Row (1-based)");
  CLI::App* peval = sub("eval", "Sum a series given as JSON", pi);
  peval->add_option("--spec", spec_path, "Series JSON file")->required();
  CLI::App* pbc = sub("bc", "Compute B and C from a matrix configuration", pi);
  pbc->add_option("--config", config_path, "Configuration JSON file")->required();

  CLI::App* verify_all = sub("verify-all", "Run every regression check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    cfg.digits = digits ? digits : default_digits();
    if (order) cfg.order = order;
    validate(cfg);

    if (*expand) {
      if (!ModularCatalog::known(name)) throw UsageError("unknown series '" + name + "'");
      const QSeries f = default_catalog().build(name, cfg.order.value_or(50));
      if (cfg.format == "json") return emit(to_json(f), true);
      std::cout << "exponent,coefficient\n";
      for (std::size_t k = 0; k < f.coefficients().size(); ++k)
        std::cout << to_string(make_rational(f.valuation() + static_cast<long>(k), f.denom())) << ','
                  << to_string(f.coefficients()[k]) << '\n';
      return 0;
    }
    if (*verify) {
      const long trunc = cfg.order.value_or(150);
      if (name == "ode") return emit_report(verify_ode(trunc), cfg);
      if (name == "composition") return emit_report(verify_composition(trunc), cfg);
      return emit_report(verify_identity(name, trunc), cfg);
    }
    if (*coeffs) {
      const CoeffSequence a = gen_A(count - 1);
      if (as_csv || (!as_json && cfg.format == "csv")) {
        std::cout << "n,A_n\n";
        for (std::size_t k = 0; k < a.values.size(); ++k) std::cout << k << ',' << to_string(a.values[k]) << '\n';
        return 0;
      }
      json values = json::array();
      for (const Rational& v : a.values) values.push_back(to_string(v));
      return emit({{"count", count}, {"source", to_string(a.source)}, {"integral", a.all_integral()}, {"A", values}}, true);
    }
    if (*modeq) {
      if (*mverify) return emit_report(verify_psi(n, cfg.order.value_or(120)), cfg);
      if (*mderive) {
        if (n != 2) throw UsageError("derive is available for n = 2 only");
        const Psi2Derivation d = derive_psi2(cfg.order.value_or(40));
        const bool ok = d.polynomial == psi(2);
        return emit({{"n", 2},
                     {"polynomial", to_json(d.polynomial)},
                     {"neg_e1", to_json(d.neg_e1)},
                     {"e2", to_json(d.e2)},
                     {"neg_e3", to_json(d.neg_e3)},
                     {"matches_stored", ok}},
                    ok);
      }
      if (*mdiag) {
        const DiagonalData d = diagonal(n);
        json factors = json::array();
        for (const PolyFactor& f : d.factorization.factors)
          factors.push_back({{"factor", f.factor.to_string()}, {"multiplicity", f.multiplicity}});
        return emit({{"n", n},
                     {"diagonal", d.diagonal.to_string()},
                     {"unit", to_string(d.factorization.unit)},
                     {"factors", factors}},
                    true);
      }
      return emit({{"n", n}, {"polynomial", to_json(modular_polynomial(n))}}, true);
    }
    if (*singular) {
      if (*seval) {
        const BQForm f = parse_form(form_text);
        const Complex tau = tau_of(f, cfg.digits + 10);
        const Evaluation x = eval_x(tau, cfg.digits);
        const Evaluation w = eval_w(tau, cfg.digits);
        return emit({{"form", to_json(f)},
                     {"tau", complex_json(tau, cfg.digits)},
                     {"reduced_tau", complex_json(x.tau, cfg.digits)},
                     {"x", complex_json(x.value, cfg.digits)},
                     {"w", complex_json(w.value, cfg.digits)},
                     {"terms", x.terms},
                     {"tail_bound", to_decimal(x.tail_bound, 3)}},
                    true);
      }
      std::vector<Check> checks;
      for (Check& c : regression_checks()) {
        const bool t1 = c.check.rfind("singular-value", 0) == 0, t2 = c.check.rfind("fixing-matrix", 0) == 0;
        if ((*stable1 && t1) || (*stable2 && t2)) checks.push_back(std::move(c));
      }
      if (*stable1 || *stable2) return emit_reports(run_checks(checks, cfg), cfg);
      json entries = json::array();
      for (const ScanEntry& e : class_scan(disc, cfg.digits)) entries.push_back(to_json(e));
      return emit({{"d", disc}, {"entries", entries}}, true);
    }
    if (*pi) {
      if (*pverify) {
        std::vector<Check> checks;
        for (Check& c : regression_checks()) {
          if (c.check.rfind("pi-series-", 0) != 0 || c.check == "pi-series-1-50") continue;
          if (row == 0 || c.check == "pi-series-" + std::to_string(row)) checks.push_back(std::move(c));
        }
        if (checks.empty()) throw UsageError("no series row " + std::to_string(row));
        return emit_reports(run_checks(checks, cfg), cfg);
      }
      if (*peval) {
        const PiSeriesSpec spec = pi_spec_from_json(read_json_file(spec_path));
        const SeriesValue v = eval_series(spec, cfg.digits);
        const unsigned agreement = agreement_digits(v.value, Complex(1 / pi_chudnovsky(cfg.digits + 10)));
        return emit({{"spec", to_json(spec)},
                     {"value", complex_json(v.value, cfg.digits + 2)},
                     {"terms", v.terms},
                     {"tail_estimate", to_decimal(v.tail_estimate, 3)},
                     {"agreement_digits", agreement},
                     {"status", agreement >= cfg.digits ? "PASS" : "FAIL"}},
                    agreement >= cfg.digits);
      }
      const json c = read_json_file(config_path);
      for (const char* key : {"matrix", "alpha", "beta", "delta", "X"})
        if (!c.contains(key)) throw UsageError(std::string("config is missing \"") + key + "\"");
      Surd tau;
      if (c.contains("form")) {
        const json& f = c["form"];
        tau = tau_exact(BQForm{f.at(0).get<long>(), f.at(1).get<long>(), f.at(2).get<long>()});
      } else if (c.contains("tau")) {
        tau = surd_from_json(c["tau"]);
      } else {
        throw UsageError("config needs \"form\" or \"tau\"");
      }
      const BCInput in = bc_input(tau, mat_from_json(c["matrix"]), c["alpha"].get<long>(), c["beta"].get<long>(),
                                  c["delta"].get<long>(), surd_from_json(c["X"]));
      const BCResult bc = compute_bc(in);
      json out{{"epsilon", to_string(in.epsilon)}, {"eta", in.eta}, {"W", to_json(in.w)}, {"B", to_json(bc.b)},
               {"B_text", bc.b.to_string()}};
      if (bc.c) {
        out["C"] = to_json(*bc.c);
        out["C_text"] = bc.c->to_string();
      } else {
        out["C"] = nullptr;
      }
      return emit(out, true);
    }
    if (*verify_all) return emit_reports(run_checks(regression_checks(), cfg), cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
