#include "metriq/clifford.hpp"

#include <algorithm>
#include <bit>

namespace metriq {

GMatrix GMatrix::identity() {
  GMatrix m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1;
  return m;
}

GMatrix GMatrix::from_rows(const std::array<std::array<CoeffExpr, 4>, 4>& rows) {
  GMatrix m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool GMatrix::is_zero() const {
  for (const auto& e : m_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

std::optional<CoeffExpr> GMatrix::scalar() const {
  const CoeffExpr& s = m_[0];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const CoeffExpr& e = (*this)(r, c);
      if (r == c ? !(e == s) : !e.is_zero()) return std::nullopt;
    }
  }
  return s;
}

CoeffExpr GMatrix::trace() const { return m_[0] + m_[5] + m_[10] + m_[15]; }

CoeffExpr GMatrix::determinant() const {
  // Laplace expansion over the 24 permutations of the columns.
  std::array<int, 4> perm{0, 1, 2, 3};
  CoeffExpr det;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    }
    CoeffExpr term(inversions % 2 ? -1 : 1);
    for (int r = 0; r < 4 && !term.is_zero(); ++r) term *= (*this)(r, perm[r]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

GMatrix& GMatrix::operator+=(const GMatrix& o) {
  for (int i = 0; i < 16; ++i) m_[i] += o.m_[i];
  return *this;
}

GMatrix& GMatrix::operator-=(const GMatrix& o) {
  for (int i = 0; i < 16; ++i) m_[i] -= o.m_[i];
  return *this;
}

GMatrix GMatrix::operator-() const {
  GMatrix out;
  for (int i = 0; i < 16; ++i) out.m_[i] = -m_[i];
  return out;
}

GMatrix operator*(const GMatrix& a, const GMatrix& b) {
  GMatrix out;
  for (int r = 0; r < 4; ++r) {
    for (int k = 0; k < 4; ++k) {
      const CoeffExpr& x = a(r, k);
      if (x.is_zero()) continue;
      for (int c = 0; c < 4; ++c) {
        if (!b(k, c).is_zero()) out(r, c) += x * b(k, c);
      }
    }
  }
  return out;
}

GMatrix GMatrix::scaled(const CoeffExpr& s) const {
  GMatrix out;
  for (int i = 0; i < 16; ++i) out.m_[i] = m_[i] * s;
  return out;
}

GMatrix GMatrix::substitute(const Bindings& b) const {
  GMatrix out;
  for (int i = 0; i < 16; ++i) out.m_[i] = m_[i].substitute(b);
  return out;
}

std::string GMatrix::str() const {
  if (auto s = scalar()) {
    if (s->is_zero()) return "0";
    if (s->is_one()) return "1";
    return (s->needs_parens() ? "(" + s->str() + ")" : s->str()) + "*1";
  }
  std::string out = "[";
  for (int r = 0; r < 4; ++r) {
    out += r ? "; " : "";
    for (int c = 0; c < 4; ++c) out += (c ? ", " : "") + (*this)(r, c).str();
  }
  return out + "]";
}

std::string_view to_string(GammaBasis b) { return b == GammaBasis::dirac ? "dirac" : "chiral"; }

GammaSet gamma_set(GammaBasis basis) {
  const CoeffExpr O, I(1), M(-1), J = CoeffExpr::i(), K = -CoeffExpr::i();
  GammaSet g;
  if (basis == GammaBasis::dirac) {
    g[0] = GMatrix::from_rows({{{I, O, O, O}, {O, I, O, O}, {O, O, M, O}, {O, O, O, M}}});
  } else {
    g[0] = GMatrix::from_rows({{{O, O, I, O}, {O, O, O, I}, {I, O, O, O}, {O, I, O, O}}});
  }
  // [[0, s_k], [-s_k, 0]] with the Pauli matrices s_x, s_y, s_z.
  g[1] = GMatrix::from_rows({{{O, O, O, I}, {O, O, I, O}, {O, M, O, O}, {M, O, O, O}}});
  g[2] = GMatrix::from_rows({{{O, O, O, K}, {O, O, J, O}, {O, J, O, O}, {K, O, O, O}}});
  g[3] = GMatrix::from_rows({{{O, O, I, O}, {O, O, O, M}, {M, O, O, O}, {O, I, O, O}}});
  return g;
}

bool AnticommutatorTable::all_pass() const {
  for (const auto& e : entries) {
    if (e.status != Status::pass) return false;
  }
  return true;
}

AnticommutatorTable anticommutator_table(const GammaSet& gammas) {
  static constexpr int kEta[4] = {1, -1, -1, -1};
  AnticommutatorTable t;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      GMatrix ac = gammas[mu] * gammas[nu] + gammas[nu] * gammas[mu];
      GMatrix expected = mu == nu ? GMatrix::identity().scaled(2 * kEta[mu]) : GMatrix();
      t.entries.push_back({mu, nu, ac, ac == expected ? Status::pass : Status::fail});
      if (mu == nu) {
        auto s = ac.scalar();
        if (s) t.eta[mu] = *s / CoeffExpr(2);
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

// Listed basis element -> (blade mask, sign relative to the increasing-index blade).
struct ListedBlade {
  int mask;
  int sign;
};
constexpr ListedBlade kListed[8] = {{0, 1}, {1, 1}, {2, 1}, {4, 1}, {3, 1}, {6, 1}, {5, -1}, {7, 1}};

const char* const kListedName[8] = {"e0", "e_x", "e_y", "e_z", "e_x*e_y", "e_y*e_z", "e_z*e_x", "e_x*e_y*e_z"};

// Sign of reordering blade(a) * blade(b) into increasing-index order.
int reorder_sign(int a, int b) {
  int swaps = 0;
  for (int bit = 0; bit < 3; ++bit) {
    if (b & (1 << bit)) swaps += std::popcount(static_cast<unsigned>(a >> (bit + 1)));
  }
  return swaps % 2 ? -1 : 1;
}

}  // namespace

Cl03Element::Cl03Element(CoeffExpr scalar) { c_[0] = std::move(scalar); }

Cl03Element Cl03Element::basis(Basis b, CoeffExpr c) {
  return blade(kListed[b].mask, kListed[b].sign < 0 ? -c : c);
}

Cl03Element Cl03Element::blade(int mask, CoeffExpr c) {
  Cl03Element e;
  e.c_[mask] = std::move(c);
  return e;
}

CoeffExpr Cl03Element::component(Basis b) const {
  const CoeffExpr& v = c_[kListed[b].mask];
  return kListed[b].sign < 0 ? -v : v;
}

bool Cl03Element::is_zero() const {
  for (const auto& v : c_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Cl03Element& Cl03Element::operator+=(const Cl03Element& o) {
  for (int i = 0; i < 8; ++i) c_[i] += o.c_[i];
  return *this;
}

Cl03Element& Cl03Element::operator-=(const Cl03Element& o) {
  for (int i = 0; i < 8; ++i) c_[i] -= o.c_[i];
  return *this;
}

Cl03Element Cl03Element::operator-() const {
  Cl03Element out;
  for (int i = 0; i < 8; ++i) out.c_[i] = -c_[i];
  return out;
}

Cl03Element Cl03Element::scaled(const CoeffExpr& s) const {
  Cl03Element out;
  for (int i = 0; i < 8; ++i) out.c_[i] = c_[i] * s;
  return out;
}

std::string Cl03Element::str() const {
  std::string out;
  for (int b = 0; b < 8; ++b) {
    CoeffExpr v = component(static_cast<Basis>(b));
    if (v.is_zero()) continue;
    std::string t;
    if (b == 0) {
      t = v.needs_parens() ? "(" + v.str() + ")" : v.str();
    } else if (v.is_one()) {
      t = kListedName[b];
    } else if ((-v).is_one()) {
      t = std::string("-") + kListedName[b];
    } else {
      t = (v.needs_parens() ? "(" + v.str() + ")" : v.str()) + "*" + kListedName[b];
    }
    if (out.empty()) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out.empty() ? "0" : out;
}

Cl03Element cl03_mul(const Cl03Element& a, const Cl03Element& b, const Cl03Signature& sig) {
  Cl03Element out;
  for (int i = 0; i < 8; ++i) {
    const CoeffExpr& x = a.blade_coeff(i);
    if (x.is_zero()) continue;
    for (int j = 0; j < 8; ++j) {
      const CoeffExpr& y = b.blade_coeff(j);
      if (y.is_zero()) continue;
      int sign = reorder_sign(i, j);
      for (int bit = 0; bit < 3; ++bit) {
        if ((i & j) & (1 << bit)) sign *= sig.square[bit];
      }
      out += Cl03Element::blade(i ^ j, sign > 0 ? x * y : -(x * y));
    }
  }
  return out;
}

}  // namespace metriq
