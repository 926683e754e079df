#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metriq/clifford.hpp"
#include "metriq/coeff_expr.hpp"
#include "metriq/heis.hpp"
#include "metriq/qcalc.hpp"
#include "metriq/status.hpp"

namespace metriq {

/// Commuting derivative symbols: d_t, d_x, d_y, d_z and their q-flavored
/// counterparts dq_t, dq_x, dq_y, dq_z.
enum class Deriv : std::uint8_t { t = 0, x, y, z, qt, qx, qy, qz };

/// Monomial in the derivative symbols (exponent per symbol).
struct DerivMono {
  std::array<std::uint8_t, 8> e{};

  static DerivMono of(Deriv d, int k = 1) {
    DerivMono m;
    m.e[static_cast<int>(d)] = static_cast<std::uint8_t>(k);
    return m;
  }
  int degree() const;
  DerivMono operator*(const DerivMono& o) const;
  friend auto operator<=>(const DerivMono&, const DerivMono&) = default;
  std::string str() const;
};

/// Constant-coefficient operator sum_m C_m * m over derivative monomials.
template <class C>
class DiffOp {
 public:
  using TermMap = std::map<DerivMono, C>;

  DiffOp() = default;
  DiffOp(C c) { add_term(DerivMono{}, c); }  // NOLINT(google-explicit-constructor)
  static DiffOp term(const DerivMono& m, C c) {
    DiffOp d;
    d.add_term(m, c);
    return d;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  C coeff(const DerivMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C() : it->second;
  }

  void add_term(const DerivMono& m, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffOp& operator+=(const DiffOp& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  DiffOp operator-() const {
    DiffOp out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp scaled(const CoeffExpr& s) const {
    DiffOp out;
    for (const auto& [m, c] : terms_) out.add_term(m, c.scaled(s));
    return out;
  }
  /// Substitutes into every coefficient entry (needs C::substitute).
  DiffOp substitute(const Bindings& b) const {
    DiffOp out;
    for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(b));
    return out;
  }
  friend bool operator==(const DiffOp&, const DiffOp&) = default;

  /// Product with coefficients multiplied by mul(a, b) and monomials merged.
  template <class Mul>
  static DiffOp product(const DiffOp& a, const DiffOp& b, Mul mul) {
    DiffOp out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, mul(ca, cb));
    }
    return out;
  }

 private:
  TermMap terms_;
};

using MatrixDiffOp = DiffOp<GMatrix>;
using CliffDiffOp = DiffOp<Cl03Element>;

MatrixDiffOp op_mul(const MatrixDiffOp& a, const MatrixDiffOp& b);
CliffDiffOp op_mul(const CliffDiffOp& a, const CliffDiffOp& b, const Cl03Signature& sig = {});

/// Printed form; matrix coefficients that are multiples of 1 or of a single
/// gamma matrix of `basis` print symbolically.
std::string str(const MatrixDiffOp& op, GammaBasis basis = GammaBasis::dirac);
std::string str(const CliffDiffOp& op);

/// Parses operator text with tokens d_t, d_x, d_y, d_z, dq_t, ..., dq_z and
/// gamma0, gammax, gammay, gammaz (in the given basis). Throws SyntaxError.
MatrixDiffOp parse_operator(std::string_view text, const std::map<std::string, long>& exponent_env = {},
                            GammaBasis basis = GammaBasis::dirac);

struct OperatorOptions {
  bool allow_any_signature = false;
  GammaBasis basis = GammaBasis::dirac;
  /// Use dq_* symbols instead of d_*.
  bool q_derivatives = false;
};

/// |g00| d_t^2 - sum_i |gii| d_i^2 (times 1), dropping zero axes.
/// Throws NonLorentzianSignature unless allow_any_signature.
MatrixDiffOp build_dalembertian(const MetricSpec& g, const OperatorOptions& opt = {});
/// gamma0 sqrt|g00| d_t - sum_i gamma_i sqrt|gii| d_i, dropping zero axes.
MatrixDiffOp build_dirac(const MetricSpec& g, const OperatorOptions& opt = {});

struct MixedTerm {
  int mu = 0;
  int nu = 0;
  GMatrix coeff;  // coefficient of d_mu d_nu in D^2
};

struct FactorizationReport {
  Status status = Status::fail;
  MatrixDiffOp dirac;
  MatrixDiffOp square;
  MatrixDiffOp dalembertian;
  /// All six pairs mu < nu.
  std::vector<MixedTerm> mixed;
  bool mixed_vanish() const;
  std::vector<std::string> notes;
};

FactorizationReport verify_factorization(const MetricSpec& g, const OperatorOptions& opt = {});

/// e_x dq_x + e_y dq_y + e_z dq_z.
CliffDiffOp build_quadratic_qdirac();

struct QuadraticFactorizationReport {
  Status status = Status::fail;
  CliffDiffOp square;
  CliffDiffOp expected;
  /// Coefficients of dq_i dq_j (i < j) in the square.
  std::vector<std::pair<std::string, Cl03Element>> mixed;
};

/// Checks (D^q)^2 = -e0 (dq_x^2 + dq_y^2 + dq_z^2) with the given generator squares.
QuadraticFactorizationReport verify_quadratic_factorization(const Cl03Signature& sig = {});

struct BracketReport {
  /// Normal forms in the x-axis q-Weyl algebra (X = x, Dq = dq_x).
  QWeylPoly commutator;    // Dq X - X Dq
  QWeylPoly q_commutator;  // Dq X - q X Dq
  /// The same quantities for the full operator D^q, written out.
  std::string full_commutator;
  std::string full_q_commutator;
  /// Both brackets at q = 1.
  QWeylPoly commutator_classical;
  QWeylPoly q_commutator_classical;
  std::vector<std::string> notes;
};

BracketReport qweyl_bracket_report();

struct DispersionResult {
  CoeffExpr determinant;    // det(i omega gamma0 + i k q gammax) as a polynomial in omega
  CoeffExpr omega_squared;  // root of the squarefree kernel factor
  int multiplicity = 0;
  /// Max-norm of the truncated plane-wave residual; set when q and k are numeric.
  std::optional<double> residual;
  std::vector<std::string> notes;
};

/// 1+1 reduced operator gamma0 dq_t - gammax q dq_x. Throws QFactorialZero.
DispersionResult dispersion_1p1(const CoeffExpr& q, const CoeffExpr& k, int N,
                                QConvention conv = QConvention::basic);

}  // namespace metriq
