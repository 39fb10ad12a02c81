#include "level17/surd.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace level17 {
namespace {

// sqrt(a) sqrt(b) = sign * g * sqrt(ab/g^2) for squarefree a, b.
std::pair<long, long> multiply_radicands(long a, long b) {
  const long g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
  const long sign = (a < 0 && b < 0) ? -1 : 1;
  return {(a / g) * (b / g), sign * g};
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  if (n < 0) {
    out.push_back(-1);
    n = -n;
  }
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void add_term(std::map<long, Rational>& terms, long m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

}  // namespace

Surd::Surd(const Rational& c) {
  if (sgn(c) != 0) terms_[1] = c;
}

Surd Surd::root(long n, const Rational& c) {
  if (n == 0) return Surd();
  const long m = squarefree_part(n);
  const long square = n / m;
  const long k = static_cast<long>(std::llround(std::sqrt(static_cast<double>(square))));
  long s = k;
  while (s * s > square) --s;
  while ((s + 1) * (s + 1) <= square) ++s;
  Surd out;
  add_term(out.terms_, m, c * s);
  return out;
}

Surd Surd::quadratic(const Rational& p, const Rational& q, long m) { return Surd(p) + root(m, q); }

bool Surd::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.count(1)); }

Rational Surd::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? Rational(0) : it->second;
}

Surd Surd::real_part() const {
  Surd out;
  for (const auto& [m, c] : terms_)
    if (m > 0) out.terms_[m] = c;
  return out;
}

Surd Surd::imaginary_part() const {
  Surd out;
  for (const auto& [m, c] : terms_)
    if (m < 0) out.terms_[m] = c;
  return out;
}

bool Surd::is_real() const { return imaginary_part().is_zero(); }

Surd Surd::operator-() const {
  Surd out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Surd& Surd::operator+=(const Surd& o) {
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
  return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd& Surd::operator*=(const Surd& o) {
  std::map<long, Rational> out;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      const auto [m, factor] = multiply_radicands(a, b);
      add_term(out, m, ca * cb * factor);
    }
  }
  terms_ = std::move(out);
  return *this;
}

Surd& Surd::operator/=(const Surd& o) { return *this *= inverse(o); }

Surd Surd::conjugate(long p) const {
  Surd out = *this;
  for (auto& [m, c] : out.terms_) {
    const bool flips = p == -1 ? m < 0 : m % p == 0;
    if (flips) c = -c;
  }
  return out;
}

std::vector<long> Surd::generators() const {
  std::set<long> primes;
  for (const auto& [m, c] : terms_)
    for (long p : prime_factors(m)) primes.insert(p);
  return {primes.begin(), primes.end()};
}

Complex Surd::to_complex() const {
  Complex out;
  for (const auto& [m, c] : terms_) {
    const Real mag = to_real(c) * boost::multiprecision::sqrt(Real(m < 0 ? -m : m));
    if (m > 0)
      out.re += mag;
    else
      out.im += mag;
  }
  return out;
}

std::string Surd::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << level17::to_string(c);
    if (m != 1) out << "*sqrt(" << m << ")";
  }
  return out.str();
}

Surd inverse(const Surd& a) {
  if (a.is_zero()) throw std::domain_error("inverse of zero surd");
  // a * prod of conjugates is rational; eliminate one generator at a time.
  Surd numerator(1), denominator = a;
  for (long p : a.generators()) {
    const Surd c = denominator.conjugate(p);
    numerator *= c;
    denominator *= c;
  }
  if (!denominator.is_rational()) throw std::logic_error("surd inverse did not reach a rational norm");
  return numerator * Surd(Rational(1) / denominator.rational_part());
}

Surd pow(const Surd& a, long k) {
  if (k < 0) return pow(inverse(a), -k);
  Surd result(1), base = a;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::vector<Rational> minimal_polynomial(const Surd& a) {
  std::vector<Surd> orbit{a};
  for (long p : a.generators()) {
    const std::size_t size = orbit.size();
    for (std::size_t i = 0; i < size; ++i) {
      const Surd c = orbit[i].conjugate(p);
      bool seen = false;
      for (const auto& o : orbit) seen = seen || o == c;
      if (!seen) orbit.push_back(c);
    }
  }
  std::vector<Surd> poly{Surd(1)};
  for (const auto& root : orbit) {
    std::vector<Surd> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * root;
    }
    poly = std::move(next);
  }
  std::vector<Rational> out;
  for (const auto& c : poly) {
    if (!c.is_rational()) throw std::logic_error("minimal polynomial has irrational coefficient");
    out.push_back(c.rational_part());
  }
  return out;
}

nlohmann::json to_json(const Surd& a) {
  long field = 1;
  for (const auto& [m, c] : a.terms())
    if (m != 1) field = (field == 1 || field == m) ? m : 0;
  if (field != 0) {
    const Rational q = field == 1 ? Rational(0) : a.terms().at(field);
    return {{"p", to_string(a.rational_part())}, {"q", to_string(q)}, {"m", field}};
  }
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : a.terms()) terms.push_back({m, to_string(c)});
  return {{"terms", terms}};
}

Surd surd_from_json(const nlohmann::json& j) {
  if (j.contains("terms")) {
    Surd out;
    for (const auto& t : j.at("terms")) out += Surd::root(t.at(0).get<long>(), parse_rational(t.at(1).get<std::string>()));
    return out;
  }
  auto field = [&](const char* key) {
    const auto& v = j.at(key);
    return v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
  };
  const long m = j.value("m", 1L);
  if (m == 0) throw std::invalid_argument("surd radicand must be nonzero");
  return Surd::quadratic(field("p"), j.contains("q") ? field("q") : Rational(0), m);
}

}  // namespace level17
