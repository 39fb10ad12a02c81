#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "level17/catalog.hpp"
#include "level17/highprec.hpp"
#include "level17/identities.hpp"
#include "level17/polynomial.hpp"
#include "level17/surd.hpp"

namespace level17 {

/// Positive definite binary quadratic form a X^2 + b XY + c Y^2 naming the CM
/// point tau(a, b, c) = (-b + sqrt(d)) / (2a), d = b^2 - 4ac.
struct BQForm {
  long a = 0, b = 0, c = 0;

  long discriminant() const { return b * b - 4 * a * c; }
  bool valid() const { return a > 0 && discriminant() < 0; }
  bool primitive() const;
  std::string to_string() const;  // "(a,b,c)"
  friend bool operator==(const BQForm&, const BQForm&) = default;
};

/// Parses "a,b,c" (optional parentheses). Throws std::invalid_argument.
BQForm parse_form(const std::string& text);
nlohmann::json to_json(const BQForm& f);

/// Exact tau in Q(sqrt(d)).
Surd tau_exact(const BQForm& f);
/// tau to the current working precision (raised to `digits`).
Complex tau_of(const BQForm& f, unsigned digits);

/// Reduced representative: |b| <= a <= c, and b >= 0 when |b| = a or a = c.
BQForm reduce_form(const BQForm& f);
/// Primitive reduced forms of discriminant d (d < 0, d = 0 or 1 mod 4).
std::vector<BQForm> reduced_forms(long d);

/// Integer 2x2 matrix acting by Moebius transformations.
struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  Complex apply(const Complex& tau) const;
  Surd apply(const Surd& tau) const;
  std::string to_string() const;  // "(a,b;c,d)"
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Moves tau by Gamma0(17) and the Fricke involution tau -> -1/(17 tau)
/// until no available move increases Im tau. x is invariant under these.
Complex reduce_tau(const Complex& tau);

struct Evaluation {
  Complex value;
  Real tail_bound;     // bound on the neglected part of the q-expansions
  long terms = 0;      // number of q-coefficients used
  Complex tau;         // point where the expansions were summed
};

/// x(tau) = Omega(q)/z(q) summed at the reduced point. With trunc omitted
/// enough terms are taken for 10^-digits; with trunc given, throws
/// std::domain_error if that many terms cannot reach 10^-digits.
Evaluation eval_x(const Complex& tau, unsigned digits, std::optional<long> trunc = std::nullopt,
                  ModularCatalog& catalog = default_catalog());
/// w(tau) = 2 (theta Omega z - Omega theta z) / (Omega z^2), summed at tau itself
/// (w is only invariant up to sign, so tau is not moved).
Evaluation eval_w(const Complex& tau, unsigned digits, ModularCatalog& catalog = default_catalog());

enum class CertificateKind { ModularEquation, MinimalPolynomial };
std::string to_string(CertificateKind kind);

/// Evidence that x(tau(form)) equals an algebraic number.
struct Certificate {
  BQForm form;
  Surd claimed;
  long n = 0;                  // modular-equation degree tying tau to itself
  CertificateKind kind = CertificateKind::ModularEquation;
  Poly factor;                 // irreducible polynomial with claimed as an exact root
  bool exact_root = false;
  unsigned digits = 0;         // working precision
  unsigned required_digits = 0;
  unsigned agreement = 0;      // digits of agreement between x(tau) and claimed
  std::string residual;        // |x(tau) - claimed|, decimal
  Complex value;
  CheckStatus status = CheckStatus::Fail;

  bool passed() const { return status == CheckStatus::Pass; }
};
nlohmann::json to_json(const Certificate& c);

/// Checks that `claimed` is an exact root of an irreducible factor of
/// P_n(X, X) and that x(tau) matches it to 10^-required_digits at precision
/// `digits`. When the degree-n equation is beyond the solver
/// (psi(n) > kMaxSolvedDegree) the exact part falls back to the minimal
/// polynomial of `claimed`, and the certificate kind records that.
Certificate certify_value(const BQForm& form, const Surd& claimed, long n, unsigned digits = 60,
                          unsigned required_digits = 40, ModularCatalog& catalog = default_catalog());

struct SingularValue {
  BQForm form;
  Surd claimed;
  std::string claimed_text;
  long n;  // degree of the upper-triangular matrix fixing x(tau)
};

/// The eleven degree <= 2 singular values inside the radius of convergence.
const std::vector<SingularValue>& singular_value_table();
/// x(tau(17,-8,1)) = 1, certified by the degree-2 equation.
const SingularValue& unit_value();

struct FixingMatrix {
  BQForm form;
  Mat2 element;  // determinant n, lower left divisible by 17
  Mat2 upper;    // (alpha, beta; 0, delta)
  bool marked_fixed;  // listed as fixing tau (otherwise as sending it to -1/(17 tau))
};

const std::vector<FixingMatrix>& fixing_matrix_table();

struct FixingMatrixCheck {
  FixingMatrix row;
  long n = 0;
  bool determinant_ok = false;  // det element = alpha delta, gcd(n, 17) = 1
  bool level_ok = false;        // 17 | lower-left entry
  bool action_ok = false;       // exact Moebius check in Q(sqrt(d)): tau or -1/(17 tau)
  std::string action;           // "fixes", "fricke" or "none"
  bool upper_ok = false;        // 0 <= beta < delta, gcd(alpha, beta, delta) = 1
  bool equivalence_ok = false;  // element = g * upper with g in Gamma0(17)
  Mat2 gamma0_factor;
  std::string failure;

  bool passed() const { return failure.empty(); }
};
nlohmann::json to_json(const FixingMatrixCheck& c);

FixingMatrixCheck check_fixing_matrix(const FixingMatrix& row);
std::vector<FixingMatrixCheck> verify_fixing_matrices();

struct ScanEntry {
  BQForm reduced;      // SL2(Z)-reduced form
  long coset = 0;      // k for tau -> -1/(tau + k), or kIdentityCoset
  BQForm image;        // form of the translated point
  Complex x;
  bool inside_radius = false;
  std::optional<std::string> match;  // claimed value it agrees with, if any
};
constexpr long kIdentityCoset = 99;
nlohmann::json to_json(const ScanEntry& e);

/// For each primitive reduced form of discriminant d, the eighteen
/// Gamma0(17) coset images tau, -1/(tau + k) (k = -8..8) with numeric x and
/// whether x is a listed singular value.
std::vector<ScanEntry> class_scan(long d, unsigned digits = 40, ModularCatalog& catalog = default_catalog());

}  // namespace level17
