#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "metriq/coeff_expr.hpp"
#include "metriq/status.hpp"

namespace metriq {

/// 4x4 matrix with coefficient-field entries.
class GMatrix {
 public:
  GMatrix() = default;
  static GMatrix identity();
  static GMatrix from_rows(const std::array<std::array<CoeffExpr, 4>, 4>& rows);

  const CoeffExpr& operator()(int r, int c) const { return m_[r * 4 + c]; }
  CoeffExpr& operator()(int r, int c) { return m_[r * 4 + c]; }

  bool is_zero() const;
  /// s when the matrix equals s * identity.
  std::optional<CoeffExpr> scalar() const;
  CoeffExpr trace() const;
  CoeffExpr determinant() const;

  GMatrix& operator+=(const GMatrix& o);
  GMatrix& operator-=(const GMatrix& o);
  GMatrix operator-() const;
  friend GMatrix operator+(GMatrix a, const GMatrix& b) { return a += b; }
  friend GMatrix operator-(GMatrix a, const GMatrix& b) { return a -= b; }
  friend GMatrix operator*(const GMatrix& a, const GMatrix& b);
  GMatrix scaled(const CoeffExpr& s) const;
  GMatrix substitute(const Bindings& b) const;
  friend bool operator==(const GMatrix&, const GMatrix&) = default;

  std::string str() const;

 private:
  std::array<CoeffExpr, 16> m_{};
};

enum class GammaBasis { dirac, chiral };
std::string_view to_string(GammaBasis b);

/// gamma^0, gamma^x, gamma^y, gamma^z.
using GammaSet = std::array<GMatrix, 4>;

/// Dirac basis: gamma^0 = diag(1, 1, -1, -1), gamma^k = [[0, s_k], [-s_k, 0]].
/// Chiral basis: gamma^0 = [[0, 1], [1, 0]] with the same gamma^k.
GammaSet gamma_set(GammaBasis basis = GammaBasis::dirac);

struct AnticommutatorEntry {
  int mu = 0;
  int nu = 0;
  GMatrix value;  // {gamma^mu, gamma^nu}
  Status status = Status::fail;
};

struct AnticommutatorTable {
  std::vector<AnticommutatorEntry> entries;  // all 16 ordered pairs
  /// Diagonal of eta read back as half the scalar part of {gamma^mu, gamma^mu}.
  std::array<std::optional<CoeffExpr>, 4> eta;
  bool all_pass() const;
};

/// Compares every {gamma^mu, gamma^nu} with 2 eta^{mu nu} 1 for eta = diag(1, -1, -1, -1).
AnticommutatorTable anticommutator_table(const GammaSet& gammas);
inline AnticommutatorTable anticommutator_table() { return anticommutator_table(gamma_set()); }

/// Squares of the three Cl(0,3) generators; the standard algebra has all -1.
struct Cl03Signature {
  std::array<int, 3> square{-1, -1, -1};
};

/// Element of Cl(0,3). Storage is indexed by blade bitmask
/// (bit 0 = e_x, bit 1 = e_y, bit 2 = e_z) in increasing-index order.
class Cl03Element {
 public:
  /// Listed basis {1, e_x, e_y, e_z, e_xe_y, e_ye_z, e_ze_x, e_xe_ye_z}.
  enum Basis { e0, ex, ey, ez, exy, eyz, ezx, exyz };

  Cl03Element() = default;
  Cl03Element(CoeffExpr scalar);  // NOLINT(google-explicit-constructor)
  static Cl03Element basis(Basis b, CoeffExpr c = CoeffExpr(1));
  static Cl03Element blade(int mask, CoeffExpr c = CoeffExpr(1));

  /// Coefficient on a listed basis element.
  CoeffExpr component(Basis b) const;
  const CoeffExpr& blade_coeff(int mask) const { return c_[mask]; }

  bool is_zero() const;
  Cl03Element& operator+=(const Cl03Element& o);
  Cl03Element& operator-=(const Cl03Element& o);
  Cl03Element operator-() const;
  friend Cl03Element operator+(Cl03Element a, const Cl03Element& b) { return a += b; }
  friend Cl03Element operator-(Cl03Element a, const Cl03Element& b) { return a -= b; }
  Cl03Element scaled(const CoeffExpr& s) const;
  friend bool operator==(const Cl03Element&, const Cl03Element&) = default;

  std::string str() const;

 private:
  std::array<CoeffExpr, 8> c_{};
};

/// Structure-constant product.
Cl03Element cl03_mul(const Cl03Element& a, const Cl03Element& b, const Cl03Signature& sig = {});
inline Cl03Element operator*(const Cl03Element& a, const Cl03Element& b) { return cl03_mul(a, b); }

}  // namespace metriq
