#include "level17/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace level17 {
namespace {

// ---- dense polynomials over Z/mZ, coefficients in [0, m), constant term first ----

using ModPoly = std::vector<Integer>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Integer mod(const Integer& v, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inv_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) throw std::domain_error("non-invertible residue");
  return r;
}

ModPoly reduce(const Poly& f, const Integer& m) {
  ModPoly out;
  for (const auto& c : f.coeffs()) out.push_back(mod(c.get_num() * inv_mod(c.get_den(), m), m));
  trim(out);
  return out;
}

ModPoly sub(ModPoly a, const ModPoly& b, const Integer& m) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], m);
  trim(a);
  return a;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  for (auto& x : c) x = mod(x, m);
  trim(c);
  return c;
}

ModPoly scale(ModPoly a, const Integer& s, const Integer& m) {
  for (auto& x : a) x = mod(x * s, m);
  trim(a);
  return a;
}

// Division by b whose leading coefficient is a unit mod m.
std::pair<ModPoly, ModPoly> divmod(ModPoly a, const ModPoly& b, const Integer& m) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  const Integer li = inv_mod(b.back(), m);
  if (a.size() < b.size()) return {{}, a};
  ModPoly q(a.size() - b.size() + 1);
  for (std::size_t k = a.size(); k-- >= b.size();) {
    const Integer t = mod(a[k] * li, m);
    q[k - b.size() + 1] = t;
    if (t != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[k - b.size() + 1 + j] = mod(a[k - b.size() + 1 + j] - t * b[j], m);
    if (k == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

ModPoly monic(const ModPoly& a, const Integer& p) { return scale(a, inv_mod(a.back(), p), p); }

ModPoly gcd(ModPoly a, ModPoly b, const Integer& p) {
  while (!b.empty()) {
    ModPoly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic(a, p);
}

// s, t with s a + t b = 1 mod p for coprime a, b.
std::pair<ModPoly, ModPoly> bezout(const ModPoly& a, const ModPoly& b, const Integer& p) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    ModPoly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw std::logic_error("bezout: inputs are not coprime");
  const Integer inv = inv_mod(r0[0], p);
  return {scale(s0, inv, p), scale(t0, inv, p)};
}

ModPoly powmod(ModPoly base, Integer e, const ModPoly& f, const Integer& p) {
  ModPoly out{1};
  base = divmod(base, f, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) out = divmod(mul(out, base, p), f, p).second;
    base = divmod(mul(base, base, p), f, p).second;
    e >>= 1;
  }
  return out;
}

ModPoly derivative(const ModPoly& a, const Integer& p) {
  ModPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(mod(a[i] * static_cast<unsigned long>(i), p));
  trim(out);
  return out;
}

// Monic irreducible factors of a square-free monic polynomial mod an odd prime:
// distinct-degree splitting followed by Cantor-Zassenhaus.
std::vector<ModPoly> factor_mod_p(ModPoly f, const Integer& p) {
  std::vector<ModPoly> out;
  std::mt19937_64 rng(12345);
  std::function<void(const ModPoly&, long)> split = [&](const ModPoly& g, long d) {
    const long n = static_cast<long>(g.size()) - 1;
    if (n == d) {
      out.push_back(g);
      return;
    }
    Integer e;
    mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    for (;;) {
      ModPoly a(static_cast<std::size_t>(n));
      for (auto& c : a) c = mod(Integer(static_cast<unsigned long>(rng() >> 1)), p);
      trim(a);
      if (a.size() < 2) continue;
      ModPoly b = powmod(a, e, g, p);
      b = sub(b, ModPoly{1}, p);
      const ModPoly h = gcd(b, g, p);
      if (h.size() > 1 && h.size() < g.size()) {
        split(h, d);
        split(divmod(g, h, p).first, d);
        return;
      }
    }
  };
  const ModPoly x{0, 1};
  ModPoly h = x;
  for (long d = 1; 2 * d <= static_cast<long>(f.size()) - 1; ++d) {
    h = powmod(h, p, f, p);
    const ModPoly g = gcd(sub(h, x, p), f, p);
    if (g.size() > 1) {
      split(g, d);
      f = divmod(f, g, p).first;
      h = divmod(h, f, p).second;
    }
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

// Lifts f = g h mod p (g, h monic and coprime, f monic) to a factorization mod p^k.
std::pair<ModPoly, ModPoly> hensel_lift(const ModPoly& f, ModPoly g, ModPoly h, const Integer& p, long k) {
  const auto [s, t] = bezout(g, h, p);
  Integer pj = p;
  for (long j = 1; j < k; ++j) {
    const Integer next = pj * p;
    ModPoly e = sub(f, mul(g, h, next), next);
    for (auto& c : e) c = mod(c / pj, p);
    trim(e);
    const ModPoly a = divmod(mul(t, e, p), g, p).second;
    const ModPoly b = divmod(sub(e, mul(a, h, p), p), g, p).first;
    ModPoly da = scale(a, pj, next), db = scale(b, pj, next);
    if (g.size() < da.size()) g.resize(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) g[i] = mod(g[i] + da[i], next);
    if (h.size() < db.size()) h.resize(db.size());
    for (std::size_t i = 0; i < db.size(); ++i) h[i] = mod(h[i] + db[i], next);
    trim(g);
    trim(h);
    pj = next;
  }
  return {g, h};
}

std::vector<ModPoly> multifactor_lift(const ModPoly& f, const std::vector<ModPoly>& factors, const Integer& p, long k,
                                      const Integer& pk) {
  if (factors.size() == 1) return {f};
  ModPoly rest{1};
  for (std::size_t i = 1; i < factors.size(); ++i) rest = mul(rest, factors[i], p);
  auto [g, h] = hensel_lift(f, factors[0], rest, p, k);
  auto tail = multifactor_lift(h, std::vector<ModPoly>(factors.begin() + 1, factors.end()), p, k, pk);
  tail.insert(tail.begin(), g);
  (void)pk;
  return tail;
}

bool divides(const Poly& d, const Poly& p) { return divmod(p, d).second.is_zero(); }

// Irreducible factors of a primitive square-free f with f(0) != 0 (Zassenhaus).
void factor_zassenhaus(Poly f, int multiplicity, std::vector<PolyFactor>& out) {
  f = f.primitive();
  if (f.degree() <= 1) {
    if (f.degree() == 1) out.push_back({f, multiplicity});
    return;
  }
  const Integer lc = f.leading().get_num();
  // Pick the prime (among a few) giving the fewest modular factors.
  std::vector<ModPoly> best;
  Integer best_p;
  Integer p = 2;
  for (int tried = 0; tried < 8;) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (mod(lc, p) == 0) continue;
    const ModPoly fp = reduce(f, p);
    if (gcd(fp, derivative(fp, p), p).size() != 1) continue;
    ++tried;
    auto fac = factor_mod_p(monic(fp, p), p);
    if (best.empty() || fac.size() < best.size()) {
      best = std::move(fac);
      best_p = p;
    }
    if (best.size() == 1) break;
  }
  if (best.size() <= 1) {
    out.push_back({f, multiplicity});
    return;
  }
  // Mignotte-type bound on the coefficients of lc * (any factor).
  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c.get_num() * c.get_num();
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  const Integer bound = 2 * abs(lc) * (norm + 1) * (Integer(1) << static_cast<unsigned long>(f.degree()));
  long k = 1;
  Integer pk = best_p;
  while (pk <= 2 * bound) {
    pk *= best_p;
    ++k;
  }
  const ModPoly fk = scale(reduce(f, pk), inv_mod(lc, pk), pk);
  std::vector<ModPoly> lifted = multifactor_lift(fk, best, best_p, k, pk);
  const Integer half = pk / 2;
  auto to_integer_poly = [&](const ModPoly& g) {
    std::vector<Rational> c;
    for (const auto& v : g) c.emplace_back(v > half ? Integer(v - pk) : v);
    return Poly(std::move(c));
  };
  // Recombine subsets of the lifted factors, smallest subsets first.
  for (std::size_t size = 1; 2 * size <= lifted.size();) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      ModPoly g{mod(f.leading().get_num(), pk)};
      for (auto i : idx) g = mul(g, lifted[i], pk);
      const Poly cand = to_integer_poly(g).primitive();
      if (cand.degree() >= 1 && divides(cand, f)) {
        out.push_back({cand, multiplicity});
        f = divmod(f, cand).first.primitive();
        for (std::size_t i = size; i-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[i]));
        found = true;
        break;
      }
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == lifted.size() - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (f.degree() >= 1) out.push_back({f, multiplicity});
}

void factor_squarefree(Poly f, int multiplicity, std::vector<PolyFactor>& out) {
  f = f.primitive();
  if (f.degree() < 1) return;
  if (sgn(f.coeff(0)) == 0) {
    out.push_back({Poly::from_integers({0, 1}), multiplicity});
    f = divmod(f, Poly::from_integers({0, 1})).first.primitive();
  }
  factor_zassenhaus(f, multiplicity, out);
}

std::string term(const Integer& c, const std::string& mono, bool first) {
  std::string s;
  if (c < 0)
    s = first ? "-" : " - ";
  else if (!first)
    s = " + ";
  const Integer a = abs(c);
  if (mono.empty() || a != 1) s += a.get_str() + (mono.empty() ? "" : "*");
  return s + mono;
}

}  // namespace

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::from_integers(const std::vector<long>& coeffs) {
  return Poly(std::vector<Rational>(coeffs.begin(), coeffs.end()));
}

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(const Rational& s, const Poly& a) {
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

Poly Poly::derivative() const {
  std::vector<Rational> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
  return Poly(std::move(c));
}

Rational Poly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Surd Poly::evaluate(const Surd& x) const {
  Surd acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Surd(c_[i]);
  return acc;
}

bool Poly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Rational Poly::content() const {
  if (c_.empty()) return 0;
  Integer num = 0, den = 1;
  for (const auto& c : c_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    den = lcm(den, c.get_den());
  }
  Rational out(num, den);
  out.canonicalize();
  return sgn(c_.back()) < 0 ? Rational(-out) : out;
}

Poly Poly::primitive() const {
  if (c_.empty()) return *this;
  return (Rational(1) / content()) * *this;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (sgn(c_[i]) == 0) continue;
    const std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (c_[i].get_den() == 1) {
      out += term(c_[i].get_num(), mono, first);
    } else {
      out += (first ? "" : " + ") + std::string("(") + level17::to_string(c_[i]) + ")" + (mono.empty() ? "" : "*" + mono);
    }
    first = false;
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const long db = b.degree();
  std::vector<Rational> q(r.size() >= b.coeffs().size() ? r.size() - b.coeffs().size() + 1 : 0);
  for (long k = static_cast<long>(r.size()) - 1; k >= db; --k) {
    const Rational t = r[static_cast<std::size_t>(k)] / b.leading();
    if (sgn(t) == 0) continue;
    q[static_cast<std::size_t>(k - db)] = t;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive();
  }
  return x.is_zero() ? x : x.primitive();
}

Poly Factorization::expand() const {
  Poly out = Poly::monomial(unit, 0);
  for (const auto& f : factors)
    for (int k = 0; k < f.multiplicity; ++k) out = out * f.factor;
  return out;
}

std::string Factorization::to_string(const std::string& var) const {
  std::string out = unit == 1 ? "" : (unit == -1 ? "-" : level17::to_string(unit) + "*");
  for (const auto& f : factors) {
    const bool bare = f.factor.coeffs().size() == 2 && f.factor.coeff(0) == 0 && f.factor.coeff(1) == 1;
    out += bare ? var : "(" + f.factor.to_string(var) + ")";
    if (f.multiplicity > 1) out += "^" + std::to_string(f.multiplicity);
  }
  return out;
}

Factorization factor(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
  Factorization out;
  out.unit = p.content();
  Poly f = p.primitive();
  // Yun's square-free decomposition.
  Poly b = f;
  Poly c = gcd(b, b.derivative());
  Poly w = divmod(b, c).first;
  int k = 1;
  while (w.degree() >= 1) {
    const Poly y = gcd(w, c);
    const Poly z = divmod(w, y).first;
    if (z.degree() >= 1) factor_squarefree(z, k, out.factors);
    w = y;
    c = divmod(c, y).first;
    ++k;
  }
  // Sort for deterministic output.
  std::sort(out.factors.begin(), out.factors.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    const bool ax = sgn(a.factor.coeff(0)) == 0, bx = sgn(b.factor.coeff(0)) == 0;
    if (ax != bx) return ax;
    return a.factor.coeffs() < b.factor.coeffs();
  });
  // Primitive factors with positive leading terms multiply to a primitive
  // polynomial (Gauss), so the content is the whole unit.
  if (!(out.expand() == p)) throw std::logic_error("factorization does not reproduce its input");
  return out;
}

BivarPoly::BivarPoly(std::map<std::pair<int, int>, Integer> coeffs) : c_(std::move(coeffs)) {
  std::erase_if(c_, [](const auto& kv) { return kv.second == 0; });
}

Integer BivarPoly::coeff(int i, int j) const {
  auto it = c_.find({i, j});
  return it == c_.end() ? Integer(0) : it->second;
}

int BivarPoly::degree_x() const {
  int d = -1;
  for (const auto& [ij, c] : c_) d = std::max(d, ij.first);
  return d;
}

int BivarPoly::degree_y() const {
  int d = -1;
  for (const auto& [ij, c] : c_) d = std::max(d, ij.second);
  return d;
}

bool BivarPoly::is_symmetric() const {
  for (const auto& [ij, c] : c_)
    if (coeff(ij.second, ij.first) != c) return false;
  return true;
}

BivarPoly BivarPoly::operator-() const {
  auto c = c_;
  for (auto& [ij, v] : c) v = -v;
  return BivarPoly(std::move(c));
}

BivarPoly BivarPoly::derivative(int a, int b) const {
  std::map<std::pair<int, int>, Integer> out;
  for (const auto& [ij, c] : c_) {
    auto [i, j] = ij;
    if (i < a || j < b) continue;
    Integer v = c;
    for (int k = 0; k < a; ++k) v *= i - k;
    for (int k = 0; k < b; ++k) v *= j - k;
    out[{i - a, j - b}] = v;
  }
  return BivarPoly(std::move(out));
}

Surd BivarPoly::evaluate(const Surd& x, const Surd& y) const {
  std::vector<Surd> xp{Surd(1)}, yp{Surd(1)};
  for (int k = 0; k < degree_x(); ++k) xp.push_back(xp.back() * x);
  for (int k = 0; k < degree_y(); ++k) yp.push_back(yp.back() * y);
  Surd acc;
  for (const auto& [ij, c] : c_) acc += Surd(Rational(c)) * xp[static_cast<std::size_t>(ij.first)] * yp[static_cast<std::size_t>(ij.second)];
  return acc;
}

Complex BivarPoly::evaluate(const Complex& x, const Complex& y) const {
  std::vector<Complex> xp{Complex(Real(1))}, yp{Complex(Real(1))};
  for (int k = 0; k < degree_x(); ++k) xp.push_back(xp.back() * x);
  for (int k = 0; k < degree_y(); ++k) yp.push_back(yp.back() * y);
  Complex acc;
  for (const auto& [ij, c] : c_)
    acc += Complex(to_real(c)) * xp[static_cast<std::size_t>(ij.first)] * yp[static_cast<std::size_t>(ij.second)];
  return acc;
}

QSeries BivarPoly::evaluate(const QSeries& x, const QSeries& y) const {
  const long trunc = std::min(x.trunc(), y.trunc());
  std::vector<QSeries> xp{QSeries::constant(1, std::max(trunc, 1L))};
  for (int k = 0; k < degree_x(); ++k) xp.push_back(xp.back() * x);
  // Horner in Y over the coefficient series sum_i c_ij x^i.
  QSeries acc = QSeries::zero(trunc);
  for (int j = degree_y(); j >= 0; --j) {
    QSeries coeff = QSeries::zero(trunc);
    for (const auto& [ij, c] : c_)
      if (ij.second == j) coeff += Rational(c) * xp[static_cast<std::size_t>(ij.first)];
    acc = (j == degree_y()) ? coeff : acc * y + coeff;
  }
  return acc;
}

Poly BivarPoly::diagonal() const {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(0, degree_x() + degree_y() + 1)));
  for (const auto& [ij, v] : c_) c[static_cast<std::size_t>(ij.first + ij.second)] += Rational(v);
  return Poly(std::move(c));
}

std::string BivarPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    auto [i, j] = it->first;
    std::string mono;
    if (i) mono += i == 1 ? "X" : "X^" + std::to_string(i);
    if (j) mono += (mono.empty() ? "" : "*") + std::string(j == 1 ? "Y" : "Y^" + std::to_string(j));
    out += term(it->second, mono, first);
    first = false;
  }
  return out;
}

nlohmann::json to_json(const BivarPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [ij, c] : p.coeffs()) out.push_back({ij.first, ij.second, c.get_str()});
  return out;
}

BivarPoly bivar_from_json(const nlohmann::json& j) {
  std::map<std::pair<int, int>, Integer> c;
  for (const auto& t : j) {
    const auto& v = t.at(2);
    c[{t.at(0).get<int>(), t.at(1).get<int>()}] = v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long>());
  }
  return BivarPoly(std::move(c));
}

}  // namespace level17
