#include <doctest.h>

#include <complex>

#include "metriq/clifford.hpp"

using namespace metriq;
using cd = std::complex<double>;
using CMat = std::array<std::array<cd, 4>, 4>;

namespace {

// Independent floating-point construction of the two gamma bases.
std::array<CMat, 4> numeric_gammas(bool chiral) {
  const cd I(0, 1);
  const cd s[3][2][2] = {{{0, 1}, {1, 0}}, {{0, -I}, {I, 0}}, {{1, 0}, {0, -1}}};
  std::array<CMat, 4> g{};
  for (int a = 0; a < 2; ++a) {
    if (chiral) {
      g[0][a][a + 2] = g[0][a + 2][a] = 1;
    } else {
      g[0][a][a] = 1;
      g[0][a + 2][a + 2] = -1;
    }
  }
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        g[k + 1][a][b + 2] = s[k][a][b];
        g[k + 1][a + 2][b] = -s[k][a][b];
      }
    }
  }
  return g;
}

}  // namespace

TEST_SUITE("clifford") {
  TEST_CASE("gamma matrices match a floating-point construction") {
    for (auto basis : {GammaBasis::dirac, GammaBasis::chiral}) {
      GammaSet exact = gamma_set(basis);
      auto num = numeric_gammas(basis == GammaBasis::chiral);
      for (int m = 0; m < 4; ++m) {
        for (int r = 0; r < 4; ++r) {
          for (int c = 0; c < 4; ++c) CHECK(exact[m](r, c).evaluate({}) == num[m][r][c]);
        }
      }
    }
  }

  TEST_CASE("anticommutators") {
    for (auto basis : {GammaBasis::dirac, GammaBasis::chiral}) {
      AnticommutatorTable t = anticommutator_table(gamma_set(basis));
      CHECK(t.entries.size() == 16);
      CHECK(t.all_pass());
      CHECK(t.eta[0] == CoeffExpr(1));
      for (int k = 1; k < 4; ++k) CHECK(t.eta[k] == CoeffExpr(-1));
    }
    GammaSet broken = gamma_set();
    broken[2] = broken[1];
    CHECK_FALSE(anticommutator_table(broken).all_pass());
  }

  TEST_CASE("matrix invariants") {
    GammaSet g = gamma_set();
    CHECK(g[0].trace().is_zero());
    CHECK(g[0].determinant() == CoeffExpr(1));
    CHECK((g[1] * g[1]).scalar() == CoeffExpr(-1));
    CHECK(GMatrix::identity().scalar() == CoeffExpr(1));
  }

  TEST_CASE("Cl(0,3) products") {
    using E = Cl03Element;
    E ex = E::basis(E::ex), ey = E::basis(E::ey), ez = E::basis(E::ez);
    CHECK(cl03_mul(ex, ex) == E(CoeffExpr(-1)));
    CHECK(cl03_mul(ex, ey) == E::basis(E::exy));
    CHECK(cl03_mul(ey, ex) == -E::basis(E::exy));
    CHECK(cl03_mul(ez, ex) == E::basis(E::ezx));
    CHECK(cl03_mul(cl03_mul(ex, ey), ez) == E::basis(E::exyz));
    CHECK(cl03_mul(ex, ex, Cl03Signature{{1, -1, -1}}) == E(CoeffExpr(1)));
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 8; ++k) {
          E a = E::blade(i), b = E::blade(j), c = E::blade(k);
          CHECK(cl03_mul(cl03_mul(a, b), c) == cl03_mul(a, cl03_mul(b, c)));
        }
      }
    }
  }
}
