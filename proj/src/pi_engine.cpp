#include "level17/pi_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "level17/coefficients.hpp"

namespace level17 {
namespace {

const Surd kI = Surd::root(-1);

Surd quartic(const Surd& x) {
  const Surd x2 = x * x;
  return Surd(1) - Surd(16) * x - Surd(66) * x2 - Surd(48) * x2 * x - Surd(127) * x2 * x2;
}

Surd quartic_derivative_term(const Surd& x) {
  const Surd x2 = x * x;
  return x * (Surd(-508) * x2 * x - Surd(144) * x2 - Surd(132) * x - Surd(16));
}

// sqrt of a rational as a surd, when the square-free part fits a machine word.
std::optional<Surd> rational_root(const Rational& r) {
  Rational root;
  if (rational_sqrt(r, root)) return Surd(root);
  const Integer n = r.get_num() * r.get_den();
  if (!n.fits_slong_p()) return std::nullopt;
  const long v = n.get_si();
  const long m = squarefree_part(v);
  Integer k;
  const Integer sq = Integer(v / m);
  mpz_sqrt(k.get_mpz_t(), sq.get_mpz_t());
  Rational scale(k, r.get_den());
  scale.canonicalize();
  return Surd::root(m, scale);
}

// sqrt of p + q sqrt(m) as a + b sqrt(m), if it is one.
std::optional<Surd> field_root(const Surd& r) {
  long m = 0;
  for (const auto& [key, c] : r.terms())
    if (key != 1) {
      if (m) return std::nullopt;
      m = key;
    }
  if (!m) return std::nullopt;
  const Rational p = r.rational_part(), q = r.terms().at(m);
  Rational s;
  if (!rational_sqrt(p * p - Rational(m) * q * q, s)) return std::nullopt;
  for (const Rational& a2 : {Rational((p + s) / 2), Rational((p - s) / 2)}) {
    Rational a;
    if (sgn(a2) <= 0 || !rational_sqrt(a2, a)) continue;
    const Surd root = Surd::quadratic(a, q / (2 * a), m);
    if (root * root == r) return root;
  }
  return std::nullopt;
}

bool close(const Complex& a, const Complex& b) {
  require_digits(40);
  const Real scale = std::max(abs(b), Real(1));
  return abs(a - b) < scale * Real("1e-25");
}

Real level5_radius() {
  // 1 / (22 + 10 sqrt 5)
  return 1 / (22 + 10 * boost::multiprecision::sqrt(Real(5)));
}

std::string coeffs_name(SeriesCoefficients c) { return c == SeriesCoefficients::Level17 ? "level17" : "level5"; }

}  // namespace

Complex ScaledRoot::value() const { return coef.to_complex() * sqrt(radicand.to_complex()); }

ScaledRoot ScaledRoot::simplified() const {
  if (radicand == Surd(1) || is_zero()) return *this;
  std::optional<Surd> root = radicand.is_rational() ? rational_root(radicand.rational_part()) : field_root(radicand);
  if (!root) return *this;
  // Match the principal branch.
  if (!close(root->to_complex(), sqrt(radicand.to_complex()))) root = -*root;
  return {coef * *root, Surd(1)};
}

std::string ScaledRoot::to_string() const {
  if (radicand == Surd(1)) return coef.to_string();
  return "(" + coef.to_string() + ")*sqrt(" + radicand.to_string() + ")";
}

bool same_value(const ScaledRoot& a, const ScaledRoot& b) {
  if (!(a.coef * a.coef * a.radicand == b.coef * b.coef * b.radicand)) return false;
  return close(a.value(), b.value());
}

nlohmann::json to_json(const ScaledRoot& r) {
  nlohmann::json j = to_json(r.coef);
  if (!(r.radicand == Surd(1))) j["radicand"] = to_json(r.radicand);
  return j;
}

ScaledRoot scaled_root_from_json(const nlohmann::json& j) {
  ScaledRoot out;
  nlohmann::json coef = j;
  if (coef.is_object() && coef.contains("radicand")) {
    out.radicand = surd_from_json(coef["radicand"]);
    coef.erase("radicand");
  }
  out.coef = surd_from_json(coef);
  return out;
}

nlohmann::json to_json(const PiSeriesSpec& s) {
  return {{"name", s.name},         {"X", to_json(s.x)},     {"B", to_json(s.b)},
          {"C", to_json(s.c)},      {"coeffs", coeffs_name(s.coeffs)}, {"provenance", s.provenance}};
}

PiSeriesSpec pi_spec_from_json(const nlohmann::json& j) {
  for (const char* key : {"X", "B", "C"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("series JSON is missing \"") + key + "\"");
  PiSeriesSpec s;
  s.name = j.value("name", "custom");
  s.x = surd_from_json(j.at("X"));
  s.b = scaled_root_from_json(j.at("B"));
  s.c = scaled_root_from_json(j.at("C"));
  const std::string c = j.value("coeffs", "level17");
  if (c == "level17")
    s.coeffs = SeriesCoefficients::Level17;
  else if (c == "level5")
    s.coeffs = SeriesCoefficients::Level5;
  else
    throw std::invalid_argument("coeffs must be \"level17\" or \"level5\"");
  s.provenance = j.value("provenance", "user");
  return s;
}

SeriesValue eval_series(const PiSeriesSpec& spec, unsigned digits, std::optional<long> max_terms) {
  require_digits(digits + 10);
  const Real rad = spec.coeffs == SeriesCoefficients::Level17 ? radius(digits + 10) : level5_radius();
  const Complex x = spec.x.to_complex();
  const Real ax = abs(x);
  if (ax >= rad) throw std::domain_error("X lies outside the radius of convergence");
  const Real ratio = ax / rad;
  const Complex b = spec.b.value(), c = spec.c.value();
  const Real ab = abs(b), ac = abs(c);

  long planned = max_terms ? *max_terms : 20;
  if (!max_terms && ax > 0)
    planned = static_cast<long>(std::ceil((digits + 10) / -std::log10(ratio.convert_to<double>()))) + 20;
  auto coefficients = [&](long n) {
    return spec.coeffs == SeriesCoefficients::Level17 ? gen_A(n).values : level5_a(n).values;
  };
  std::vector<Rational> a = coefficients(planned);
  const Real threshold = boost::multiprecision::pow(Real(10), -static_cast<long>(digits) - 5);

  Complex s0, s1, power(Real(1));
  SeriesValue out;
  int small = 0;
  Real last = 0;
  for (long k = 0;; ++k) {
    if (max_terms && k >= *max_terms) break;
    if (k >= static_cast<long>(a.size())) a = coefficients(static_cast<long>(a.size()) * 3 / 2 + 10);
    const Complex base = Complex(to_real(a[static_cast<std::size_t>(k)])) * power;
    s0 += base;
    s1 += Complex(Real(k)) * base;
    last = abs(base) * (ab * k + ac);
    out.terms = k + 1;
    if (!max_terms) {
      small = last < threshold ? small + 1 : 0;
      if (small >= 10 || (ax == 0 && k >= 1)) break;
      if (k > 1000000) throw std::runtime_error("series did not converge");
    }
    power *= x;
  }
  out.value = b * s1 + c * s0;
  out.tail_estimate = ratio < 1 ? last * ratio / (1 - ratio) : Real(0);
  return out;
}

std::pair<Rational, int> multipliers(const Mat2& m) {
  if (m.det() == 1) return {Rational(1), 1};
  if (m.det() == 17) return {make_rational(-1, 17), -1};
  throw std::invalid_argument("matrix " + m.to_string() + " is neither in Gamma0(17) nor of Fricke type");
}

BCResult compute_bc(const BCInput& in) {
  const Mat2& m = in.matrix;
  if (in.alpha * in.delta <= 0 || in.beta < 0 || in.beta >= in.delta)
    throw std::invalid_argument("need alpha delta > 0 and 0 <= beta < delta");
  if (m.c == 0) throw std::invalid_argument("lower-left matrix entry must be nonzero");
  const Surd lhs = m.apply(in.tau);
  const Surd rhs = (Surd(in.alpha) * in.tau + Surd(in.beta)) / Surd(in.delta);
  if (!(lhs == rhs)) throw std::invalid_argument("matrix does not act as the upper-triangular matrix at tau");

  const Surd ct = Surd(m.c) * in.tau + Surd(m.d);
  const Surd ct3 = ct * ct * ct;
  const Surd det(m.det());
  const Surd al2(in.alpha * in.alpha), de2(in.delta * in.delta);
  const Surd ee = Surd(in.epsilon * in.eta);
  // P_X / P_Y along the branch Y = x((alpha tau + beta)/delta), from x(g tau) = x(tau).
  const Surd slope_ratio = -Surd(make_rational(in.alpha, in.delta)) * ct * ct / det;
  bool smooth = false;
  if (in.partials && !in.partials->y.is_zero()) {
    if (!(in.partials->x == slope_ratio * in.partials->y))
      throw std::invalid_argument("partial derivatives disagree with the matrix at (X, X)");
    smooth = true;
  }

  BCResult out;
  const Surd b_coef =
      -kI * in.w.coef * (de2 * slope_ratio * det + al2 * ee * ct * ct3) / (Surd(2) * al2 * Surd(m.c) * ee * ct3);
  const bool real_x = in.x.is_real();
  if (real_x && !b_coef.is_real()) throw std::domain_error("B is not real: " + b_coef.to_string());
  out.b = ScaledRoot{b_coef, in.w.radicand}.simplified();

  if (smooth) {
    const PsiPartials& p = *in.partials;
    const Surd w2 = in.w.coef * in.w.coef * in.w.radicand;
    const Surd theta_log_w = quartic_derivative_term(in.x) / (Surd(2) * w2);
    const Surd inner = p.x * p.y * (p.x + p.y) * (Surd(1) + theta_log_w) +
                       (p.x * p.x * p.yy - Surd(2) * p.x * p.xy * p.y + p.xx * p.y * p.y) * in.x;
    const Surd c_coef = kI * de2 * (-det) * in.w.coef / (Surd(2) * al2 * Surd(m.c) * ee * p.y * p.y * p.y * ct3) * inner;
    if (real_x && !c_coef.is_real()) throw std::domain_error("C is not real: " + c_coef.to_string());
    out.c = ScaledRoot{c_coef, in.w.radicand}.simplified();
  }
  return out;
}

BCInput bc_input(const Surd& tau, const Mat2& matrix, long alpha, long beta, long delta, const Surd& x,
                               ModularCatalog& catalog) {
  BCInput in;
  in.matrix = matrix;
  in.alpha = alpha;
  in.beta = beta;
  in.delta = delta;
  in.tau = tau;
  std::tie(in.epsilon, in.eta) = multipliers(matrix);
  in.x = x;
  in.w = ScaledRoot{Surd(1), quartic(x)};
  require_digits(40);  // before tau is rounded
  const Complex numeric = eval_w(tau.to_complex(), 40, catalog).value;
  if (!close(in.w.value(), numeric)) {
    in.w.coef = Surd(-1);
    if (!close(in.w.value(), numeric)) throw std::domain_error("w(tau) is not a square root of the quartic at x");
  }
  in.w = in.w.simplified();
  const long n = alpha * delta;
  if (psi_degree(n) <= kMaxSolvedDegree) in.partials = partials_at(n, x, catalog);
  return in;
}

const std::vector<PiRow>& pi_rows() {
  static const std::vector<PiRow> rows = [] {
    const Surd r17 = Surd::root(17);
    const Surd i7 = Surd::root(-7);
    auto x_of = [](const Surd& den) { return inverse(den); };
    // Numerator (u + v k) over den^(k+2) and left side lhs: B = v X^2 / lhs, C = u X^2 / lhs.
    auto shifted = [&](std::string name, const Surd& den, const Surd& u, long v, const ScaledRoot& lhs) {
      const Surd x = x_of(den);
      PiSeriesSpec s;
      s.name = std::move(name);
      s.x = x;
      s.b = ScaledRoot{Surd(v) * x * x / lhs.coef, inverse(lhs.radicand)}.simplified();
      s.c = ScaledRoot{u * x * x / lhs.coef, inverse(lhs.radicand)}.simplified();
      s.provenance = "level-17 series table";
      return s;
    };
    auto fricke = [](long alpha, long delta, const Surd& tau) { return PiConfig{tau, Mat2{0, -1, 17, 0}, alpha, 0, delta}; };
    auto centred = [](long n) {
      const Surd tau = Surd(make_rational(1, 2)) + Surd::root(-17 * n, make_rational(1, 34));
      return PiConfig{tau, Mat2{17, -9, 34, -17}, 1, (n - 1) / 2, n};
    };
    std::vector<PiRow> out;
    out.push_back({shifted("X = -1/21", Surd(-21), Surd(307), 748, {Surd(1), Surd(11)}), std::nullopt, centred(11)});
    out.push_back({shifted("X = (-22 - 7*sqrt(17))^-1", Surd(-22) - Surd(7) * r17, Surd(1779) - Surd(195) * r17, 3040,
                           {Surd(2), Surd(154) * r17 - Surd(634)}),
                   std::nullopt, centred(19)});
    out.push_back({shifted("X = (-90 - 21*sqrt(17))^-1", Surd(-90) - Surd(21) * r17, Surd(9241) - Surd(1047) * r17, 21280,
                           {Surd::root(119, 214) - Surd::root(7, 882), Surd(1)}),
                   std::nullopt, centred(35)});
    out.push_back({shifted("X = (-345 - 84*sqrt(17))^-1", Surd(-345) - Surd(84) * r17, Surd(71065) - Surd(15096) * r17,
                           50740, {Surd(1), Surd(1041894) * r17 - Surd(4295839)}),
                   std::nullopt, centred(59)});
    out.push_back({shifted("X = (-1025 - 252*sqrt(17))^-1", Surd(-1025) - Surd(252) * r17,
                           Surd(74004567) - Surd(11655082) * r17, 178775028,
                           {Surd(9), Surd(Rational(Integer("2038550094"))) * r17 - Surd(Rational(Integer("8405157343")))}),
                   std::nullopt, centred(83)});
    // sum A_k (u + v k) / (161874 den^k) = lhs / pi
    for (int sign : {1, -1}) {
      const Surd den = Surd(30) + Surd(sign * 33) * i7;
      const Surd u = Surd(3370317797L) + Surd(sign * 95119383L) * i7;
      const ScaledRoot lhs{Surd(1), Surd(14) * (Surd(1267990301L) - Surd(sign * 85084065L) * i7)};
      PiSeriesSpec s;
      s.name = sign > 0 ? "X = (30 + 33*sqrt(-7))^-1" : "X = (30 - 33*sqrt(-7))^-1";
      s.x = x_of(den);
      s.b = ScaledRoot{Surd(Rational(Integer("12974719520"), Integer(161874))), inverse(lhs.radicand)}.simplified();
      s.c = ScaledRoot{u / Surd(161874), inverse(lhs.radicand)}.simplified();
      s.provenance = "level-17 series table";
      // X = (30 + 33 sqrt(-7))^-1 at tau = (-7 + i sqrt(427))/34, where (13 tau + 3)/(17 tau + 4) = (tau + 82)/107;
      // the conjugate at tau = (7 + i sqrt(427))/34, where (11 tau - 2)/(17 tau - 3) = (tau + 69)/107.
      const Surd tau = Surd(make_rational(-7 * sign, 34)) + Surd::root(-427, make_rational(1, 34));
      const PiConfig cfg = sign > 0 ? PiConfig{tau, Mat2{13, 3, 17, 4}, 1, 82, 107}
                                    : PiConfig{tau, Mat2{11, -2, 17, -3}, 1, 69, 107};
      out.push_back({s, std::nullopt, cfg});
    }
    PiRow r7{shifted("X = (12 + 3*sqrt(17))^-1", Surd(12) + Surd(3) * r17, Surd(23) - Surd(3) * r17, 32,
                     {Surd(1), Surd(9) * r17 - Surd(37)}),
             Surd(32) - Surd(3) * r17, fricke(1, 2, Surd::root(-34, make_rational(1, 17)))};
    out.push_back(r7);
    out.push_back({shifted("X = (29 + 4*sqrt(85))^-1", Surd(29) + Surd::root(85, 4), Surd(21500) - Surd::root(85, 788),
                           54720, {Surd::root(5, 261) - Surd::root(17, 135), Surd(1)}),
                   std::nullopt, fricke(1, 5, Surd::root(-85, make_rational(1, 17)))});
    out.push_back({shifted("X = (55 + 24*sqrt(2))^-1", Surd(55) + Surd::root(2, 24), Surd(58962) - Surd::root(2, 7226),
                           199920, {Surd::root(6, 539) - Surd::root(3, 735), Surd(1)}),
                   std::nullopt, fricke(1, 6, Surd::root(-102, make_rational(1, 17)))});
    out.push_back({shifted("X = (55 - 24*sqrt(2))^-1", Surd(55) - Surd::root(2, 24), Surd(58962) + Surd::root(2, 7226),
                           199920, {Surd(2) * (Surd::root(6, 539) + Surd::root(3, 735)), Surd(1)}),
                   std::nullopt, fricke(2, 3, Surd::root(-102, make_rational(1, 34)))});
    // 1/pi = 1705/(81 sqrt 47) sum a(n) (n + 71/682) (-1/15228)^n
    PiSeriesSpec five;
    five.name = "level 5, X = -1/15228";
    five.x = Surd(make_rational(-1, 15228));
    five.b = ScaledRoot{Surd::root(47, make_rational(1705, 81 * 47))};
    five.c = ScaledRoot{Surd::root(47, make_rational(1705, 81 * 47) * make_rational(71, 682))};
    five.coeffs = SeriesCoefficients::Level5;
    five.provenance = "level-5 series";
    out.push_back({five, std::nullopt, std::nullopt});
    return out;
  }();
  return rows;
}

nlohmann::json to_json(const PiRowReport& r) {
  return {{"row", r.index + 1},
          {"name", r.name},
          {"digits", r.digits},
          {"agreement_digits", r.agreement},
          {"terms", r.terms},
          {"tail_estimate", r.tail_estimate},
          {"value", {{"re", to_decimal(r.value.re, r.digits + 2)}, {"im", to_decimal(r.value.im, 5)}}},
          {"derived_B", r.derived_b},
          {"derived_C", r.derived_c},
          {"status", to_string(r.status)}};
}

PiRowReport verify_pi_row(std::size_t index, unsigned digits, bool with_derivation, ModularCatalog& catalog) {
  const auto& rows = pi_rows();
  if (index >= rows.size()) throw std::out_of_range("no series row " + std::to_string(index + 1));
  const PiRow& row = rows[index];
  PiRowReport out;
  out.index = index;
  out.name = row.spec.name;
  out.digits = digits;
  require_digits(digits + 10);
  const Real inv_pi = 1 / pi_chudnovsky(digits + 10);
  const SeriesValue sv = eval_series(row.spec, digits);
  out.value = sv.value;
  out.terms = sv.terms;
  out.tail_estimate = to_decimal(sv.tail_estimate, 3);
  out.agreement = agreement_digits(sv.value, Complex(inv_pi));
  bool ok = out.agreement >= digits;
  out.derived_b = out.derived_c = "not-computed";
  if (with_derivation && row.config) {
    const PiConfig& cfg = *row.config;
    const BCInput in = bc_input(cfg.tau, cfg.matrix, cfg.alpha, cfg.beta, cfg.delta, row.spec.x, catalog);
    const BCResult bc = compute_bc(in);
    out.derived_b = same_value(bc.b, row.spec.b) ? "match" : "mismatch";
    if (bc.c) out.derived_c = same_value(*bc.c, row.spec.c) ? "match" : "mismatch";
    ok = ok && out.derived_b != "mismatch" && out.derived_c != "mismatch";
  }
  out.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return out;
}

}  // namespace level17
