#include "level17/identities.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace level17 {
namespace {

constexpr long kGuard = 6;
constexpr long kSturmOrder = 481;

using Residual = std::function<QSeries(ModularCatalog&, long)>;

QSeries one(long n) { return QSeries::constant(1, n); }

// Sum over all (m, n) of ((-1)^m - (-1)^n) q^((n^2 + 17 m^2)/4), known to O(q^trunc).
QSeries lattice_theta(long trunc) {
  const long limit = static_cast<long>(std::ceil(2 * std::sqrt(static_cast<double>(trunc)))) + 1;
  const long top = 4 * trunc;
  std::vector<Rational> c(static_cast<std::size_t>(top));
  for (long m = -limit; m <= limit; ++m) {
    for (long n = -limit; n <= limit; ++n) {
      const long e = n * n + 17 * m * m;
      const long weight = ((m % 2 == 0) ? 1 : -1) - ((n % 2 == 0) ? 1 : -1);
      if (e < top && weight != 0) c[static_cast<std::size_t>(e)] += weight;
    }
  }
  return QSeries::from_coefficients(std::move(c), 0, top, 4);
}

QSeries residual_for(const std::string& name, ModularCatalog& cat, long n) {
  if (name == "reciprocal-17") {
    const QSeries r = cat.build("r", n), s = cat.build("s", n);
    const QSeries r2 = r * r;
    const QSeries lhs = r2 * s + s - r;
    return lhs * lhs - Rational(4) * r * s * s * (Rational(4) - Rational(4) * r2 - Rational(15) * r);
  }
  if (name == "reciprocal-5") {
    const QSeries r5 = cat.build("R5", n), s = cat.build("S5", n);
    return s * (one(n) - Rational(11) * r5 - r5 * r5) - r5;
  }
  if (name == "reciprocal-13") {
    const QSeries r = cat.build("R13", n), s = cat.build("S13", n);
    return s * (one(n) - Rational(3) * r - r * r) - r;
  }
  if (name == "quartic-w") {
    const QSeries w = cat.build("w", n), x = cat.build("x", n);
    static const std::vector<long> quartic{1, -16, -66, -48, -127};
    return w * w - polynomial_of(quartic, x);
  }
  if (name == "x-from-rs") {
    const QSeries r = cat.build("r", n), s = cat.build("s", n), x = cat.build("x", n);
    const QSeries r2s = r * r * s;
    const QSeries den = Rational(8) * r * r2s - Rational(3) * r2s + r - s;
    const QSeries num = r * (r2s + Rational(8) * r * s - r - s);
    return x * den - num;
  }
  if (name == "x-r-quadratic") {
    const QSeries r = cat.build("r", n), x = cat.build("x", n);
    const QSeries xr1 = x * r - Rational(1);
    const QSeries r41 = Rational(4) * r - Rational(1);
    const QSeries xpr = x + r;
    return (Rational(4) - Rational(4) * r * r - Rational(15) * r) * xpr * xpr - r * xr1 * xr1 * r41 * r41;
  }
  if (name == "theta-hauptmodul") {
    const QSeries x = cat.build("x", n);
    const QSeries theta = lattice_theta(n);
    const QSeries eta = eta_quotient({{{1, 2}, {17, 2}}, make_rational(3, 2)}, n);
    return Rational(8) * eta * (one(n) - x) - x * theta * theta;
  }
  if (name == "r-eisenstein-quotient") {
    std::vector<QSeries> e;
    for (int k = 1; k <= 8; ++k) e.push_back(cat.build("E" + std::to_string(k), n + 8));
    return cat.build("r", n) - (e[0] * e[2] * e[4] * e[6]) / (e[1] * e[3] * e[5] * e[7]);
  }
  if (name == "schwarzian-z") {
    const QSeries z = cat.build("z", n), x = cat.build("x", n);
    const QSeries zq = theta_q(z), zqq = theta_q(zq);
    static const std::vector<long> sextic{2, 27, 4, 126, -222, 127};
    const QSeries xm1 = x - Rational(1);
    const QSeries z2 = z * z;
    return Rational(4) * xm1 * xm1 * (Rational(2) * z * zqq - Rational(3) * zq * zq) -
           Rational(3) * z2 * z2 * x * polynomial_of(sextic, x);
  }
  if (name == "level5-T-UV") {
    const QSeries z = cat.build("Z5", n);
    return cat.build("T5", n) * z * z - Rational(5) * cat.build("U5", n) * cat.build("V5", n);
  }
  if (name == "level13-T-UV") {
    const QSeries z = cat.build("Z13", n);
    return cat.build("T13", n) * z * z - cat.build("U13", n) * cat.build("V13", n);
  }
  if (name == "level5-W") {
    const QSeries w = cat.build("W5", n), t = cat.build("T5", n);
    static const std::vector<long> rhs{1, -44, -16};
    return w * w - polynomial_of(rhs, t);
  }
  if (name == "level13-W") {
    const QSeries w = cat.build("W13", n), t = cat.build("T13", n);
    static const std::vector<long> rhs{1, -12, -16};
    return w * w - polynomial_of(rhs, t);
  }
  if (name == "x-definition") return cat.build("x", n) * cat.build("z", n) - cat.build("Omega", n);
  if (name == "w-definition")
    return cat.build("w", n) * cat.build("z", n) - Rational(2) * theta_q_log(cat.build("x", n + 1));
  throw std::invalid_argument("unknown identity: " + name);
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::InsufficientOrder:
      return "INSUFFICIENT_ORDER";
  }
  return "FAIL";
}

nlohmann::json to_json(const IdentityReport& report) {
  nlohmann::json j{{"identity", report.name},
                   {"anchor", report.anchor},
                   {"trunc", report.trunc},
                   {"residual_valuation",
                    report.residual_valuation ? to_string(*report.residual_valuation) : "inf"},
                   {"status", to_string(report.status)}};
  if (report.required_order > 0) j["required_order"] = report.required_order;
  return j;
}

IdentityReport make_report(std::string name, std::string anchor, long trunc, const QSeries& residual,
                           long required_order) {
  if (residual.trunc_exponent() < trunc)
    throw std::logic_error("residual for " + name + " is not known to the requested order");
  IdentityReport report;
  report.name = std::move(name);
  report.anchor = std::move(anchor);
  report.trunc = trunc;
  report.required_order = required_order;
  report.residual_valuation = residual_valuation(residual.truncated_at(trunc));
  if (report.residual_valuation)
    report.status = CheckStatus::Fail;
  else if (trunc < required_order)
    report.status = CheckStatus::InsufficientOrder;
  else
    report.status = CheckStatus::Pass;
  return report;
}

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> all{
      {"reciprocal-17", "level-17 reciprocal identity r + 1/r - 2 sqrt(4/r - 4r - 15) = 1/s, squared", 0},
      {"reciprocal-5", "level-5 reciprocal identity 1/R^5 - 11 - R^5 = 1/S", 0},
      {"reciprocal-13", "level-13 reciprocal identity 1/R - 3 - R = 1/S", 0},
      {"quartic-w", "w^2 = -127x^4 - 48x^3 - 66x^2 - 16x + 1", 0},
      {"x-from-rs", "x = r(r^2 s + 8rs - r - s)/(8r^3 s - 3r^2 s + r - s), cleared", 0},
      {"x-r-quadratic", "4/r - 4r - 15 = (xr - 1)^2 (4r - 1)^2/(x + r)^2, cleared (Sturm bound 481)",
       kSturmOrder},
      {"theta-hauptmodul", "(1 - x)/(2x) = Theta^2/(16 eta(tau)^2 eta(17 tau)^2)", 0},
      {"r-eisenstein-quotient", "r = E1 E3 E5 E7/(E2 E4 E6 E8)", 0},
      {"schwarzian-z", "(2 z z'' - 3 z'^2)/(3 z^4) = x(127x^5 - 222x^4 + 126x^3 + 4x^2 + 27x + 2)/(4(x - 1)^2)", 0},
      {"level5-T-UV", "level 5: T Z^2 = 5 U V with U = theta log R", 0},
      {"level13-T-UV", "level 13: T Z^2 = U V", 0},
      {"level5-W", "level 5: (theta log T / Z)^2 = 1 - 44T - 16T^2", 0},
      {"level13-W", "level 13: (theta log T / Z)^2 = 1 - 12T - 16T^2", 0},
      {"x-definition", "x z = Omega", 0},
      {"w-definition", "w z = 2 theta log x", 0},
  };
  return all;
}

IdentityReport verify_identity(const std::string& name, long trunc, ModularCatalog& catalog) {
  if (trunc <= 0) throw std::invalid_argument("truncation order must be positive");
  for (const auto& info : identity_catalog()) {
    if (info.name != name) continue;
    const QSeries residual = residual_for(name, catalog, trunc + kGuard);
    return make_report(info.name, info.anchor, trunc, residual, info.required_order);
  }
  throw std::invalid_argument("unknown identity: " + name);
}

const OdeCoefficients& z_ode() {
  static const OdeCoefficients ode{{{
      {0, -3, -84, -18, -750, 2043, -2142, 762},
      {0, -14, -183, 225, -1122, 3576, -3879, 1397},
      {0, -24, -126, 306, -684, 1836, -2070, 762},
      {1, -19, -15, 101, -165, 303, -333, 127},
  }}};
  return ode;
}

IdentityReport verify_ode(long trunc, const OdeCoefficients& ode, ModularCatalog& catalog) {
  if (trunc < 30) throw std::invalid_argument("the differential equation check needs trunc >= 30");
  const long n = trunc + kGuard;
  const QSeries z = catalog.build("z", n);
  const QSeries x = catalog.build("x", n);
  const QSeries scale = Rational(2) * inverse(catalog.build("w", n) * z);
  QSeries derivative = z;
  QSeries residual = QSeries::zero(n);
  for (std::size_t k = 0; k < 4; ++k) {
    if (k > 0) derivative = scale * theta_q(derivative);
    residual += polynomial_of(ode.c[k], x) * derivative;
  }
  return make_report("z-ode", "third-order differential equation for z in x, applied to f = z", trunc,
                     residual);
}

}  // namespace level17
