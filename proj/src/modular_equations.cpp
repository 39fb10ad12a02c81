#include "level17/modular_equations.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace level17 {
namespace {

using u64 = std::uint64_t;

BivarPoly from_triples(std::initializer_list<std::array<long, 3>> triples) {
  std::map<std::pair<int, int>, Integer> c;
  for (const auto& t : triples) c[{static_cast<int>(t[0]), static_cast<int>(t[1])}] = t[2];
  return BivarPoly(std::move(c));
}

// ---- arithmetic modulo a prime below 2^31 ----

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce(const Integer& v, u64 p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }

using ModSeries = std::vector<u64>;

ModSeries reduce_series(const QSeries& f, long trunc, u64 p) {
  ModSeries out(static_cast<std::size_t>(trunc));
  for (long k = 0; k < trunc; ++k) {
    const Rational c = f.coeff(k);
    out[static_cast<std::size_t>(k)] = mulmod(reduce(c.get_num(), p), invmod(reduce(c.get_den(), p), p), p);
  }
  return out;
}

ModSeries mul(const ModSeries& a, const ModSeries& b, u64 p) {
  const std::size_t n = a.size();
  std::vector<u64> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (b[j]) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

ModSeries rescale(const ModSeries& a, long n) {
  ModSeries out(a.size());
  for (std::size_t k = 0; k * static_cast<std::size_t>(n) < a.size(); ++k) out[k * static_cast<std::size_t>(n)] = a[k];
  return out;
}

// Symmetric monomial basis: (i, j) with i <= j <= D.
std::vector<std::pair<int, int>> symmetric_basis(long d) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= d; ++i)
    for (int j = i; j <= d; ++j) out.emplace_back(i, j);
  return out;
}

// Kernel vector (one-dimensional) of the system sum_c v_c col_c = 0 mod p,
// normalised so that entry `anchor` is 1 (the first nonzero entry when anchor
// is npos, which is then stored back). Returns nullopt if the kernel is larger
// than one dimension or the anchor entry vanishes.
std::optional<std::vector<u64>> kernel_mod_p(const std::vector<ModSeries>& cols, std::size_t& anchor, u64 p) {
  const std::size_t u = cols.size();
  const std::size_t rows = cols[0].size();
  std::vector<std::vector<u64>> basis;
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < rows && basis.size() + 1 < u; ++r) {
    std::vector<u64> row(u);
    bool any = false;
    for (std::size_t c = 0; c < u; ++c) {
      row[c] = cols[c][r];
      any = any || row[c];
    }
    if (!any) continue;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const u64 f = row[pivots[b]];
      if (!f) continue;
      const u64 neg = p - f;
      for (std::size_t c = 0; c < u; ++c)
        if (basis[b][c]) row[c] = (row[c] + neg * basis[b][c]) % p;
    }
    std::size_t piv = u;
    for (std::size_t c = 0; c < u; ++c)
      if (row[c]) {
        piv = c;
        break;
      }
    if (piv == u) continue;
    const u64 inv = invmod(row[piv], p);
    for (auto& v : row) v = mulmod(v, inv, p);
    basis.push_back(std::move(row));
    pivots.push_back(piv);
  }
  if (basis.size() + 1 != u) return std::nullopt;
  std::vector<bool> is_pivot(u);
  for (auto c : pivots) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<u64> v(u);
  v[free_col] = 1;
  for (std::size_t b = basis.size(); b-- > 0;) {
    u64 s = 0;
    for (std::size_t c = 0; c < u; ++c)
      if (c != pivots[b] && basis[b][c]) s = (s + basis[b][c] * v[c]) % p;
    v[pivots[b]] = (p - s) % p;
  }
  if (anchor == std::string::npos) {
    anchor = 0;
    while (!v[anchor]) ++anchor;
  }
  if (!v[anchor]) return std::nullopt;
  const u64 inv = invmod(v[anchor], p);
  for (auto& x : v) x = mulmod(x, inv, p);
  return v;
}

// Rational with |num|, den <= sqrt(m/2) congruent to a mod m, if one exists.
std::optional<Rational> rational_reconstruction(const Integer& a, const Integer& m) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

// Omega^i z^(D-i) for i = 0..D: the homogenised powers of x = Omega/z.
std::vector<QSeries> homogeneous_powers(long d, long trunc, ModularCatalog& catalog) {
  const QSeries omega = catalog.build("Omega", trunc);
  const QSeries z = catalog.build("z", trunc);
  std::vector<QSeries> op{QSeries::constant(1, trunc)}, zp{QSeries::constant(1, trunc)};
  for (long k = 0; k < d; ++k) {
    op.push_back(op.back() * omega);
    zp.push_back(zp.back() * z);
  }
  std::vector<QSeries> out;
  for (long i = 0; i <= d; ++i) out.push_back(op[static_cast<std::size_t>(i)] * zp[static_cast<std::size_t>(d - i)]);
  return out;
}

// (z(tau) z(n tau))^D P(x(tau), x(n tau)), an integral series with the same
// valuation as P(x(tau), x(n tau)).
QSeries homogenized_residual(const BivarPoly& p, long n, long trunc, ModularCatalog& catalog) {
  const long d = std::max(p.degree_x(), p.degree_y());
  const auto t = homogeneous_powers(d, trunc, catalog);
  QSeries acc = QSeries::zero(trunc);
  for (long j = 0; j <= d; ++j) {
    QSeries inner = QSeries::zero(trunc);
    bool any = false;
    for (long i = 0; i <= d; ++i) {
      const Integer c = p.coeff(static_cast<int>(i), static_cast<int>(j));
      if (c == 0) continue;
      inner += Rational(c) * t[static_cast<std::size_t>(i)];
      any = true;
    }
    if (any) acc += inner * rescale(t[static_cast<std::size_t>(j)], Rational(n)).truncated(trunc);
  }
  return acc;
}

std::mutex psi_mutex;
std::map<long, BivarPoly> psi_cache;

}  // namespace

long psi_degree(long n) {
  if (n < 1) throw std::invalid_argument("psi_degree: n must be positive");
  long out = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    out = out / p * (p + 1);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out = out / m * (m + 1);
  return out;
}

BivarPoly psi(long n) {
  if (n == 2)
    return from_triples({{3, 3, -9}, {3, 2, -12}, {3, 1, 1}, {3, 0, 2}, {2, 3, -12}, {2, 2, 8}, {2, 1, 10},
                         {1, 3, 1}, {1, 2, 10}, {1, 1, -1}, {0, 3, 2}});
  if (n == 3)
    return from_triples({{4, 4, 435}, {4, 3, 231}, {3, 4, 231}, {4, 2, 45}, {3, 3, -385}, {2, 4, 45},
                         {4, 1, -39}, {3, 2, -63}, {2, 3, -63}, {1, 4, -39}, {4, 0, 4}, {3, 1, 9},
                         {2, 2, 123}, {1, 3, 9}, {0, 4, 4}, {2, 1, 15}, {1, 2, 15}, {1, 1, -1}});
  throw std::invalid_argument("only the degree 2 and 3 modular equations are stored");
}

BivarPoly solve_psi(long n, ModularCatalog& catalog) {
  if (n < 2 || n % 17 == 0) throw std::invalid_argument("solve_psi: need n >= 2 coprime to 17");
  const long d = psi_degree(n);
  if (d > kMaxSolvedDegree) throw std::invalid_argument("solve_psi: degree " + std::to_string(d) + " too large");
  const auto basis = symmetric_basis(d);
  const std::size_t unknowns = basis.size();

  long rows = 2 * static_cast<long>(unknowns) + n * d / 2 + 40;
  for (int attempt = 0; attempt < 4; ++attempt, rows = rows * 3 / 2) {
    const auto t = homogeneous_powers(d, rows, catalog);
    std::size_t anchor = std::string::npos;
    Integer modulus = 1;
    std::vector<Integer> residues(unknowns);
    std::vector<std::optional<Rational>> previous(unknowns);
    Integer prime = Integer(1) << 30;
    bool too_few_rows = false;
    for (int round = 0; round < 200; ++round) {
      mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
      const u64 p = prime.get_ui();
      std::vector<ModSeries> tp;
      for (const auto& s : t) tp.push_back(reduce_series(s, rows, p));
      std::vector<ModSeries> tn;
      for (const auto& s : tp) tn.push_back(rescale(s, n));
      std::vector<ModSeries> cols;
      for (auto [i, j] : basis) {
        ModSeries c = mul(tp[static_cast<std::size_t>(i)], tn[static_cast<std::size_t>(j)], p);
        if (i != j) {
          const ModSeries c2 = mul(tp[static_cast<std::size_t>(j)], tn[static_cast<std::size_t>(i)], p);
          for (std::size_t k = 0; k < c.size(); ++k) c[k] = (c[k] + c2[k]) % p;
        }
        cols.push_back(std::move(c));
      }
      const auto v = kernel_mod_p(cols, anchor, p);
      if (!v) {
        too_few_rows = round < 2;
        if (too_few_rows) break;
        continue;  // unlucky prime
      }
      // Chinese remaindering of the new residues into the running ones.
      const Integer pz(static_cast<unsigned long>(p));
      Integer inv;
      mpz_invert(inv.get_mpz_t(), Integer(modulus % pz).get_mpz_t(), pz.get_mpz_t());
      bool stable = true;
      std::vector<std::optional<Rational>> current(unknowns);
      for (std::size_t k = 0; k < unknowns; ++k) {
        const Integer delta = (Integer((*v)[k]) - residues[k] % pz + pz) % pz * inv % pz;
        residues[k] += modulus * delta;
        current[k] = rational_reconstruction(residues[k], modulus * pz);
        stable = stable && current[k] && previous[k] && *current[k] == *previous[k];
      }
      modulus *= pz;
      previous = current;
      if (!stable) continue;

      std::vector<Rational> vals;
      for (const auto& c : current) vals.push_back(*c);
      Integer den = 1;
      for (const auto& c : vals) den = lcm(den, c.get_den());
      Integer g = 0;
      std::vector<Integer> ints;
      for (const auto& c : vals) {
        ints.push_back(c.get_num() * (den / c.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
      }
      std::map<std::pair<int, int>, Integer> coeffs;
      for (std::size_t k = 0; k < unknowns; ++k) {
        const Integer c = ints[k] / g;
        coeffs[basis[k]] = c;
        coeffs[{basis[k].second, basis[k].first}] = c;
      }
      BivarPoly candidate(std::move(coeffs));
      if (candidate.coeff(1, 1) > 0) candidate = -candidate;
      const QSeries residual = homogenized_residual(candidate, n, rows + 20, catalog);
      if (residual.is_zero()) return candidate;
      // A stable but wrong reconstruction: keep adding primes.
    }
    if (!too_few_rows) break;
  }
  throw std::runtime_error("solve_psi: no modular equation found for n = " + std::to_string(n));
}

BivarPoly modular_polynomial(long n, ModularCatalog& catalog) {
  if (n == 2 || n == 3) return psi(n);
  {
    std::lock_guard lock(psi_mutex);
    auto it = psi_cache.find(n);
    if (it != psi_cache.end()) return it->second;
  }
  BivarPoly p = solve_psi(n, catalog);
  std::lock_guard lock(psi_mutex);
  psi_cache.emplace(n, p);
  return p;
}

IdentityReport verify_psi(long n, long trunc, const BivarPoly& p, ModularCatalog& catalog) {
  if (trunc < 20) throw std::invalid_argument("verify_psi needs trunc >= 20");
  const QSeries x = catalog.build("x", trunc);
  const QSeries y = rescale(x, Rational(n)).truncated(trunc);
  return make_report("modular-equation-" + std::to_string(n),
                     "P(x(tau), x(" + std::to_string(n) + " tau)) = 0 for the degree-" + std::to_string(n) +
                         " modular equation",
                     trunc, p.evaluate(x, y));
}

IdentityReport verify_psi(long n, long trunc, ModularCatalog& catalog) {
  return verify_psi(n, trunc, modular_polynomial(n, catalog), catalog);
}

namespace {

// Writes f (integral exponents, pole order <= max_pole at q = 0, known past q^0)
// as a polynomial in u = 1/x; the remainder must vanish to f's truncation.
Poly reduce_to_polynomial_in_u(QSeries f, const QSeries& u, long max_pole) {
  std::vector<QSeries> up{QSeries::constant(1, u.trunc() + max_pole)};
  for (long k = 0; k < max_pole; ++k) up.push_back(up.back() * u);
  std::vector<Rational> coeffs(static_cast<std::size_t>(max_pole + 1));
  for (long d = max_pole; d >= 0; --d) {
    const Rational c = f.coeff_at(Rational(-d)) / up[static_cast<std::size_t>(d)].coeff_at(Rational(-d));
    coeffs[static_cast<std::size_t>(d)] = c;
    f -= c * up[static_cast<std::size_t>(d)];
  }
  if (residual_valuation(f))
    throw std::runtime_error("symmetric function does not reduce to a polynomial in 1/x");
  return Poly(std::move(coeffs));
}

}  // namespace

Psi2Derivation derive_psi2(long trunc, ModularCatalog& catalog) {
  if (trunc < 40) throw std::invalid_argument("derive_psi2 needs trunc >= 40");
  const QSeries x = catalog.build("x", 2 * trunc + 8);
  const QSeries x1 = rescale(x, make_rational(1, 2));                   // x(tau/2)
  const QSeries x2 = rescale(x, Rational(2)).truncated(2 * trunc + 8);  // x(2 tau)
  const QSeries x3 = substitute(x, make_rational(1, 2), -1);            // x((tau+1)/2)
  const QSeries r1 = inverse(x1), r2 = inverse(x2), r3 = inverse(x3);

  Psi2Derivation out;
  out.neg_e1 = (-(r1 + r2 + r3)).truncated_at(Rational(trunc / 2));
  out.e2 = (r1 * r2 + r1 * r3 + r2 * r3).truncated_at(Rational(trunc / 2));
  out.neg_e3 = (-(r1 * r2 * r3)).truncated_at(Rational(trunc / 2));

  // (1/Y)^3 + c3 (1/Y)^2 + c2 (1/Y) + c1 = 0 with c_k polynomials in u = 1/x.
  const QSeries u = inverse(x);
  const Poly c3 = reduce_to_polynomial_in_u(out.neg_e1, u, 2);
  const Poly c2 = reduce_to_polynomial_in_u(out.e2, u, 2);
  const Poly c1 = reduce_to_polynomial_in_u(out.neg_e3, u, 3);

  // Multiply by X^3 Y^3: u^k X^3 = X^(3-k).
  std::map<std::pair<int, int>, Rational> acc;
  acc[{3, 0}] += 1;
  const std::array<std::pair<const Poly*, int>, 3> parts{{{&c3, 1}, {&c2, 2}, {&c1, 3}}};
  for (const auto& [poly, ypow] : parts)
    for (long k = 0; k <= poly->degree(); ++k)
      acc[{static_cast<int>(3 - k), ypow}] += poly->coeff(static_cast<std::size_t>(k));
  Integer den = 1;
  for (const auto& [ij, c] : acc) den = lcm(den, c.get_den());
  std::map<std::pair<int, int>, Integer> ints;
  Integer g = 0;
  for (const auto& [ij, c] : acc) {
    ints[ij] = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[ij].get_mpz_t());
  }
  for (auto& [ij, c] : ints) c /= g;
  BivarPoly p(std::move(ints));
  // Fix the overall unit by the X^3 Y^3 coefficient of the stored equation.
  if ((p.coeff(3, 3) < 0) != (psi(2).coeff(3, 3) < 0)) p = -p;
  out.polynomial = std::move(p);
  return out;
}

DiagonalData diagonal(long n, ModularCatalog& catalog) {
  const Poly d = modular_polynomial(n, catalog).diagonal();
  return {d, factor(d)};
}

PsiPartials partials_at(const BivarPoly& p, const Surd& x0) {
  return {p.derivative(1, 0).evaluate(x0, x0), p.derivative(0, 1).evaluate(x0, x0),
          p.derivative(2, 0).evaluate(x0, x0), p.derivative(1, 1).evaluate(x0, x0),
          p.derivative(0, 2).evaluate(x0, x0)};
}

PsiPartials partials_at(long n, const Surd& x0, ModularCatalog& catalog) {
  return partials_at(modular_polynomial(n, catalog), x0);
}

}  // namespace level17
