#include "level17/singular_values.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "level17/coefficients.hpp"
#include "level17/modular_equations.hpp"

namespace level17 {
namespace {

// x with a x + b y = g = gcd(a, b) (g > 0).
long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::labs(a);
  }
  long x1, y1;
  const long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

nlohmann::json complex_json(const Complex& z, unsigned digits) {
  return {{"re", to_decimal(z.re, digits)}, {"im", to_decimal(z.im, digits)}};
}

// Sum of the first `terms` coefficients of an integral-exponent series at q.
Complex sum_series(const QSeries& f, const Complex& q, long terms) {
  Complex acc;
  for (long k = terms - 1; k >= 0; --k) acc = acc * q + Complex(to_real(f.coeff(k)));
  return acc;
}

// Bound on sum_{k >= terms} |c_k| r^k assuming |c_k| <= M (k+1)^3, with M
// fitted on the known coefficients; returned as log10.
double log10_tail(const std::vector<const QSeries*>& series, long terms, double log10_r) {
  double log10_m = -300;
  for (const QSeries* f : series)
    for (long k = 0; k < terms; ++k) {
      const Rational c = f->coeff(k);
      if (c == 0) continue;
      const double v = std::log10(std::fabs(c.get_d())) - 3 * std::log10(static_cast<double>(k + 1));
      log10_m = std::max(log10_m, v);
    }
  const double r = std::pow(10.0, log10_r);
  return log10_m + 3 * std::log10(static_cast<double>(terms + 1)) + terms * log10_r - 4 * std::log10(1 - r);
}

struct Summed {
  std::vector<QSeries> series;
  long terms;
  double log10_tail;
};

// Chooses the number of terms (or checks the given one) so that the listed
// catalog series, optionally differentiated, are summed to 10^-digits at |q|.
Summed prepare(const std::vector<std::pair<std::string, bool>>& names, const Complex& q, unsigned digits,
               std::optional<long> trunc, ModularCatalog& catalog) {
  const double log10_r = static_cast<double>(log10(abs(q)).convert_to<long double>());
  if (!(log10_r < -0.01)) throw std::domain_error("|q| too close to 1 for the q-expansions");
  const double target = -static_cast<double>(digits) - 2;
  long terms = trunc ? *trunc : static_cast<long>(std::ceil((digits + 10) / -log10_r)) + 10;
  for (;;) {
    Summed out{{}, terms, 0};
    for (const auto& [name, differentiate] : names) {
      QSeries f = catalog.build(name, terms + 1);
      out.series.push_back(differentiate ? theta_q(f) : f);
    }
    std::vector<const QSeries*> ptrs;
    for (const auto& f : out.series) ptrs.push_back(&f);
    out.log10_tail = log10_tail(ptrs, terms, log10_r);
    if (out.log10_tail < target) return out;
    if (trunc) throw std::domain_error("truncation " + std::to_string(terms) + " too small for " + std::to_string(digits) +
                                       " digits at this tau");
    terms = terms * 6 / 5 + 5;
  }
}

constexpr int kMaxVanishingOrder = 3;

Real pow10(double e) { return boost::multiprecision::pow(Real(10), Real(e)); }

}  // namespace

bool BQForm::primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

std::string BQForm::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

BQForm parse_form(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != ' ') s += ch;
  std::istringstream in(s);
  BQForm f;
  char c1 = 0, c2 = 0;
  if (!(in >> f.a >> c1 >> f.b >> c2 >> f.c) || c1 != ',' || c2 != ',' || in.peek() != EOF)
    throw std::invalid_argument("expected a form a,b,c, got '" + text + "'");
  if (!f.valid()) throw std::invalid_argument("form " + f.to_string() + " is not positive definite");
  return f;
}

nlohmann::json to_json(const BQForm& f) { return {f.a, f.b, f.c}; }

Surd tau_exact(const BQForm& f) {
  return Surd(make_rational(-f.b, 2 * f.a)) + Surd::root(f.discriminant(), make_rational(1, 2 * f.a));
}

Complex tau_of(const BQForm& f, unsigned digits) {
  require_digits(digits);
  const Real two_a = 2 * f.a;
  return {Real(-f.b) / two_a, boost::multiprecision::sqrt(Real(-f.discriminant())) / two_a};
}

BQForm reduce_form(const BQForm& form) {
  if (form.discriminant() >= 0) throw std::invalid_argument("reduce_form needs a negative discriminant");
  long a = form.a, b = form.b, c = form.c;
  if (a < 0) throw std::invalid_argument("reduce_form needs a positive definite form");
  for (;;) {
    if (b > a || b <= -a) {
      // b -> b mod 2a into (-a, a]
      const long k = static_cast<long>(std::floor(static_cast<double>(a - b) / (2.0 * a)));
      c = a * k * k + b * k + c;
      b = b + 2 * a * k;
      continue;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
  }
}

std::vector<BQForm> reduced_forms(long d) {
  if (d >= 0 || ((d % 4) + 4) % 4 > 1) throw std::invalid_argument("discriminant must be negative and 0 or 1 mod 4");
  std::vector<BQForm> out;
  for (long a = 1; 3 * a * a <= -d; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b - d) % (4 * a)) continue;
      const long c = (b * b - d) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      const BQForm f{a, b, c};
      if (f.primitive()) out.push_back(f);
    }
  return out;
}

Complex Mat2::apply(const Complex& tau) const {
  return (Complex(Real(a)) * tau + Complex(Real(b))) / (Complex(Real(c)) * tau + Complex(Real(d)));
}

Surd Mat2::apply(const Surd& tau) const { return (Surd(a) * tau + Surd(b)) / (Surd(c) * tau + Surd(d)); }

std::string Mat2::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + ")";
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Complex reduce_tau(const Complex& start) {
  if (start.im <= 0) throw std::domain_error("tau must lie in the upper half plane");
  Complex t = start;
  for (int iter = 0; iter < 1000; ++iter) {
    t.re -= boost::multiprecision::round(t.re);
    Complex best = t;
    const Real threshold = t.im * (1 + pow10(-20));
    const Complex fricke = Complex(Real(-1)) / (Complex(Real(17)) * t);
    if (fricke.im > threshold) best = fricke;
    for (long k = 1; k <= 12; ++k) {
      const long n = 17 * k;
      if (n * t.im >= 1) break;
      const long centre = -boost::multiprecision::floor(n * t.re).convert_to<long>();
      for (long d = centre - 1; d <= centre + 1; ++d) {
        long x, y;
        if (ext_gcd(d, n, x, y) != 1) continue;
        const Mat2 g{x, -y, n, d};  // x d + y n = 1
        const Complex cand = g.apply(t);
        if (cand.im > best.im && cand.im > threshold) best = cand;
      }
    }
    if (best.im <= threshold) return t;
    t = best;
  }
  return t;
}

Evaluation eval_x(const Complex& tau, unsigned digits, std::optional<long> trunc, ModularCatalog& catalog) {
  require_digits(digits);
  Evaluation out;
  out.tau = reduce_tau(tau);
  const Complex q = q_of_tau(out.tau);
  // Omega and z can vanish together (at elliptic points); x is then the
  // ratio of the first derivatives that do not both vanish.
  const Real vanishing = pow10(-static_cast<double>(digits) / 2);
  for (int order = 0; order <= kMaxVanishingOrder; ++order) {
    Summed s = prepare({{"Omega", false}, {"z", false}}, q, digits, trunc, catalog);
    for (int k = 0; k < order; ++k)
      for (auto& f : s.series) f = theta_q(f);
    if (order > 0) {
      std::vector<const QSeries*> ptrs{&s.series[0], &s.series[1]};
      s.log10_tail = log10_tail(ptrs, s.terms, static_cast<double>(log10(abs(q)).convert_to<long double>()));
    }
    const Complex num = sum_series(s.series[0], q, s.terms), den = sum_series(s.series[1], q, s.terms);
    if (abs(den) < vanishing && order < kMaxVanishingOrder) continue;
    out.terms = s.terms;
    out.tail_bound = pow10(s.log10_tail);
    out.value = num / den;
    break;
  }
  return out;
}

Evaluation eval_w(const Complex& tau, unsigned digits, ModularCatalog& catalog) {
  require_digits(digits);
  if (tau.im <= 0) throw std::domain_error("tau must lie in the upper half plane");
  Evaluation out;
  out.tau = tau;
  const Complex q = q_of_tau(tau);
  const Summed s = prepare({{"Omega", false}, {"Omega", true}, {"z", false}, {"z", true}}, q, digits, std::nullopt, catalog);
  out.terms = s.terms;
  out.tail_bound = pow10(s.log10_tail);
  const Complex om = sum_series(s.series[0], q, s.terms), dom = sum_series(s.series[1], q, s.terms);
  const Complex z = sum_series(s.series[2], q, s.terms), dz = sum_series(s.series[3], q, s.terms);
  out.value = Complex(Real(2)) * (dom * z - om * dz) / (om * z * z);
  return out;
}

std::string to_string(CertificateKind kind) {
  return kind == CertificateKind::ModularEquation ? "modular-equation" : "minimal-polynomial";
}

nlohmann::json to_json(const Certificate& c) {
  return {{"form", to_json(c.form)},
          {"discriminant", c.form.discriminant()},
          {"claimed", to_json(c.claimed)},
          {"claimed_text", c.claimed.to_string()},
          {"n", c.n},
          {"certificate", to_string(c.kind)},
          {"factor", c.factor.to_string()},
          {"exact_root", c.exact_root},
          {"digits", c.digits},
          {"required_digits", c.required_digits},
          {"agreement_digits", c.agreement},
          {"residual", c.residual},
          {"value", complex_json(c.value, std::min(c.digits, 50u))},
          {"status", to_string(c.status)}};
}

Certificate certify_value(const BQForm& form, const Surd& claimed, long n, unsigned digits, unsigned required_digits,
                          ModularCatalog& catalog) {
  if (std::gcd(n, 17L) != 1) throw std::invalid_argument("certify_value: n must be coprime to 17");
  Certificate out;
  out.form = form;
  out.claimed = claimed;
  out.n = n;
  out.digits = digits;
  out.required_digits = required_digits;
  if (psi_degree(n) <= kMaxSolvedDegree) {
    out.kind = CertificateKind::ModularEquation;
    for (const auto& f : diagonal(n, catalog).factorization.factors)
      if (f.factor.evaluate(claimed).is_zero()) {
        out.factor = f.factor;
        out.exact_root = true;
        break;
      }
  } else {
    out.kind = CertificateKind::MinimalPolynomial;
    out.factor = Poly(minimal_polynomial(claimed)).primitive();
    out.exact_root = out.factor.evaluate(claimed).is_zero();
  }
  const Evaluation ev = eval_x(tau_of(form, digits), digits, std::nullopt, catalog);
  out.value = ev.value;
  const Complex expected = claimed.to_complex();
  const Real diff = abs(ev.value - expected);
  out.residual = diff == 0 ? "0" : to_decimal(diff, 3);
  out.agreement = agreement_digits(ev.value, expected);
  out.status = out.exact_root && out.agreement >= required_digits ? CheckStatus::Pass : CheckStatus::Fail;
  return out;
}

const std::vector<SingularValue>& singular_value_table() {
  static const std::vector<SingularValue> table = [] {
    auto inv = [](long p, long q, long m) { return inverse(Surd::quadratic(p, q, m)); };
    return std::vector<SingularValue>{
        {{17, 17, 25}, inv(-1025, -252, 17), "(-1025 - 252*sqrt(17))^-1", 59},
        {{17, 17, 19}, inv(-345, -84, 17), "(-345 - 84*sqrt(17))^-1", 19},
        {{17, -17, 13}, inv(-90, -21, 17), "(-90 - 21*sqrt(17))^-1", 13},
        {{17, -27, 17}, inv(30, 33, -7), "(30 + 33*sqrt(-7))^-1", 107},
        {{17, -41, 31}, inv(30, -33, -7), "(30 - 33*sqrt(-7))^-1", 107},
        {{17, -34, 23}, inv(55, 24, 2), "(55 + 24*sqrt(2))^-1", 23},
        {{34, -68, 37}, inv(55, -24, 2), "(55 - 24*sqrt(2))^-1", 23},
        {{17, -34, 22}, inv(29, 4, 85), "(29 + 4*sqrt(85))^-1", 5},
        {{17, -17, 9}, inv(-22, -7, 17), "(-22 - 7*sqrt(17))^-1", 19},
        {{17, -17, 7}, Surd(make_rational(-1, 21)), "-1/21", 7},
        {{17, -34, 19}, inv(12, 3, 17), "(12 + 3*sqrt(17))^-1", 2},
    };
  }();
  return table;
}

const SingularValue& unit_value() {
  static const SingularValue row{{17, -8, 1}, Surd(1), "1", 2};
  return row;
}

const std::vector<FixingMatrix>& fixing_matrix_table() {
  static const std::vector<FixingMatrix> table{
      {{17, 17, 25}, {-1, -2, 17, -25}, {1, 2, 0, 59}, false},
      {{17, 17, 19}, {1, 0, 17, 19}, {1, 0, 0, 19}, false},
      {{17, -17, 13}, {-1, 0, 17, -13}, {1, 0, 0, 13}, false},
      {{17, -27, 17}, {13, -17, 17, -14}, {1, 81, 0, 107}, true},
      {{17, -41, 31}, {20, -31, 17, -21}, {1, 68, 0, 107}, true},
      {{17, -34, 23}, {-1, 0, 34, -23}, {1, 0, 0, 23}, false},
      {{34, -68, 37}, {-2, 1, 51, -37}, {1, 11, 0, 23}, false},
      {{17, -34, 22}, {-1, 1, 17, -22}, {1, 4, 0, 5}, false},
      {{17, -17, 9}, {-2, 1, 17, -18}, {1, 9, 0, 19}, false},
      {{17, -17, 7}, {-1, 0, 17, -7}, {1, 0, 0, 7}, false},
      {{17, -34, 19}, {-1, 1, 17, -19}, {1, 1, 0, 2}, false},
      {{17, -8, 1}, {3, -1, 17, -5}, {1, 1, 0, 2}, false},  // fixes tau although unmarked
  };
  return table;
}

nlohmann::json to_json(const FixingMatrixCheck& c) {
  nlohmann::json j{{"form", to_json(c.row.form)},
                   {"element", c.row.element.to_string()},
                   {"upper", c.row.upper.to_string()},
                   {"marked_fixed", c.row.marked_fixed},
                   {"action", c.action},
                   {"n", c.n},
                   {"determinant_ok", c.determinant_ok},
                   {"level_ok", c.level_ok},
                   {"action_ok", c.action_ok},
                   {"upper_ok", c.upper_ok},
                   {"equivalence_ok", c.equivalence_ok},
                   {"gamma0_factor", c.gamma0_factor.to_string()},
                   {"status", c.passed() ? "PASS" : "FAIL"}};
  if (!c.failure.empty()) j["failure"] = c.failure;
  return j;
}

FixingMatrixCheck check_fixing_matrix(const FixingMatrix& row) {
  FixingMatrixCheck out;
  out.row = row;
  const Mat2& g = row.element;
  const Mat2& u = row.upper;
  out.n = u.a * u.d;
  std::vector<std::string> failures;
  out.determinant_ok = g.det() == out.n && std::gcd(out.n, 17L) == 1;
  if (!out.determinant_ok) failures.push_back("determinant " + std::to_string(g.det()) + " != alpha*delta");
  out.level_ok = g.c % 17 == 0;
  if (!out.level_ok) failures.push_back("lower-left entry not divisible by 17");
  const Surd tau = tau_exact(row.form);
  const Surd image = g.apply(tau);
  if (image == tau)
    out.action = "fixes";
  else if (image == Surd(-1) / (Surd(17) * tau))
    out.action = "fricke";
  else
    out.action = "none";
  out.action_ok = out.action != "none";
  if (!out.action_ok) failures.push_back("element sends tau neither to itself nor to -1/(17 tau)");
  out.upper_ok = u.c == 0 && u.a > 0 && u.d > 0 && u.b >= 0 && u.b < u.d && std::gcd(std::gcd(u.a, u.b), u.d) == 1;
  if (!out.upper_ok) failures.push_back("upper-triangular matrix not in normal form");
  // g0 = element * upper^-1 = element * (delta, -beta; 0, alpha) / n.
  const Mat2 adj{u.d, -u.b, 0, u.a};
  const Mat2 scaled = g * adj;
  if (out.n != 0 && scaled.a % out.n == 0 && scaled.b % out.n == 0 && scaled.c % out.n == 0 && scaled.d % out.n == 0) {
    out.gamma0_factor = {scaled.a / out.n, scaled.b / out.n, scaled.c / out.n, scaled.d / out.n};
    out.equivalence_ok = out.gamma0_factor.det() == 1 && out.gamma0_factor.c % 17 == 0 &&
                         out.gamma0_factor * u == g;
  }
  if (!out.equivalence_ok) failures.push_back("element is not Gamma0(17) times the upper-triangular matrix");
  for (const auto& f : failures) out.failure += (out.failure.empty() ? "" : "; ") + f;
  return out;
}

std::vector<FixingMatrixCheck> verify_fixing_matrices() {
  std::vector<FixingMatrixCheck> out;
  for (const auto& row : fixing_matrix_table()) out.push_back(check_fixing_matrix(row));
  return out;
}

nlohmann::json to_json(const ScanEntry& e) {
  nlohmann::json j{{"reduced", to_json(e.reduced)},
                   {"coset", e.coset == kIdentityCoset ? nlohmann::json("identity") : nlohmann::json(e.coset)},
                   {"image", to_json(e.image)},
                   {"x", complex_json(e.x, 30)},
                   {"inside_radius", e.inside_radius}};
  j["match"] = e.match ? nlohmann::json(*e.match) : nlohmann::json(nullptr);
  return j;
}

std::vector<ScanEntry> class_scan(long d, unsigned digits, ModularCatalog& catalog) {
  require_digits(digits);
  const Real rad = radius(digits);
  const Real tolerance = pow10(-static_cast<double>(digits) / 2);
  std::vector<std::pair<std::string, Complex>> known;
  for (const auto& row : singular_value_table()) known.emplace_back(row.claimed_text, row.claimed.to_complex());
  known.emplace_back(unit_value().claimed_text, unit_value().claimed.to_complex());

  std::vector<ScanEntry> out;
  for (const BQForm& f : reduced_forms(d)) {
    std::vector<std::pair<long, BQForm>> images{{kIdentityCoset, f}};
    for (long k = -8; k <= 8; ++k) {
      // tau -> tau + k -> -1/(tau + k)
      const long b1 = f.b - 2 * f.a * k, c1 = f.a * k * k - f.b * k + f.c;
      images.push_back({k, BQForm{c1, -b1, f.a}});
    }
    for (const auto& [k, image] : images) {
      ScanEntry e;
      e.reduced = f;
      e.coset = k;
      e.image = image;
      e.x = eval_x(tau_of(image, digits), digits, std::nullopt, catalog).value;
      e.inside_radius = abs(e.x) < rad;
      for (const auto& [text, value] : known)
        if (abs(e.x - value) < tolerance) e.match = text;
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace level17
