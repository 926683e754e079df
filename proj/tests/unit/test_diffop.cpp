#include <doctest.h>

#include <complex>

#include "metriq/diffop.hpp"
#include "metriq/errors.hpp"

using namespace metriq;

namespace {

MetricSpec diag(const CoeffExpr& g0, const CoeffExpr& g1, const CoeffExpr& g2, const CoeffExpr& g3) {
  MetricSpec g;
  g.set(0, 0, g0);
  g.set(1, 1, g1);
  g.set(2, 2, g2);
  g.set(3, 3, g3);
  return g;
}

const CoeffExpr q = CoeffExpr::param("q");

}  // namespace

TEST_SUITE("diffop") {
  TEST_CASE("operator text round trip") {
    MatrixDiffOp d = parse_operator("gamma0*d_t - q*gammax*dq_x + 2*d_y^2");
    CHECK(parse_operator(str(d)) == d);
    CHECK(d.terms().size() == 3);
    CHECK(parse_operator("gammax*gammax") == MatrixDiffOp(GMatrix::identity().scaled(CoeffExpr(-1))));
    CHECK_THROWS_AS(parse_operator("gamma0*d_t +"), SyntaxError);
  }

  TEST_CASE("Minkowski factorization") {
    FactorizationReport f = verify_factorization(MetricSpec::minkowski());
    CHECK(f.status == Status::pass);
    CHECK(f.mixed_vanish());
    CHECK(f.mixed.size() == 6);
    CHECK(f.square == parse_operator("d_t^2 - d_x^2 - d_y^2 - d_z^2"));
  }

  TEST_CASE("D_new squares to the deformed wave operator") {
    for (int n = 0; n <= 3; ++n) {
      FactorizationReport f = verify_factorization(diag(1, -q.pow(n), -q, -1));
      CHECK(f.status == Status::pass);
      CHECK(f.dirac == parse_operator("gamma0*d_t - q^(n/2)*gammax*d_x - q^(1/2)*gammay*d_y - gammaz*d_z", {{"n", n}}));
      CHECK(f.square == parse_operator("d_t^2 - q^n*d_x^2 - q*d_y^2 - d_z^2", {{"n", n}}));
    }
  }

  TEST_CASE("signature checks") {
    CHECK_THROWS_AS(build_dirac(diag(-1, -1, -1, -1)), NonLorentzianSignature);
    CHECK_THROWS_AS(build_dalembertian(diag(1, 1, -1, -1)), NonLorentzianSignature);
    OperatorOptions any;
    any.allow_any_signature = true;
    CHECK(build_dalembertian(diag(1, 1, -1, -1), any) == parse_operator("d_t^2 - d_x^2 - d_y^2 - d_z^2"));
    CHECK_THROWS_AS(build_dirac(diag(1, CoeffExpr::param("g11"), -1, -1), any), UnsupportedRoot);
  }

  TEST_CASE("zero axes are dropped") {
    MatrixDiffOp box = build_dalembertian(diag(1, -1, 0, -1));
    CHECK(box == parse_operator("d_t^2 - d_x^2 - d_z^2"));
  }

  TEST_CASE("chiral basis gives the same square") {
    OperatorOptions chiral;
    chiral.basis = GammaBasis::chiral;
    FactorizationReport f = verify_factorization(diag(1, -q.pow(2), -q, -1), chiral);
    CHECK(f.status == Status::pass);
    CHECK(f.square == parse_operator("d_t^2 - q^2*d_x^2 - q*d_y^2 - d_z^2"));
  }

  TEST_CASE("quadratic q-Dirac operator") {
    QuadraticFactorizationReport r = verify_quadratic_factorization();
    CHECK(r.status == Status::pass);
    CHECK(str(r.square) == "-dq_x^2 - dq_y^2 - dq_z^2");
    for (const auto& [name, c] : r.mixed) CHECK(c.is_zero());
    QuadraticFactorizationReport flipped = verify_quadratic_factorization(Cl03Signature{{1, -1, -1}});
    CHECK(flipped.status == Status::fail);
  }

  TEST_CASE("q-Weyl brackets") {
    BracketReport b = qweyl_bracket_report();
    CHECK(b.q_commutator == QWeylPoly(1));
    CHECK(b.commutator == QWeylPoly(1) + (QWeylPoly::X() * QWeylPoly::D()).scaled(q - 1));
    CHECK(b.commutator_classical == QWeylPoly(1));
    CHECK(b.full_commutator == "[D^q, x] = e_x*(1 + (q - 1)*X*Dq)");
  }

  TEST_CASE("dispersion relation") {
    for (const char* qt : {"1/2", "1", "3/2", "2"}) {
      for (int k = 1; k <= 3; ++k) {
        CoeffExpr qv = parse_coeff(qt), kv(k);
        DispersionResult d = dispersion_1p1(qv, kv, 12);
        CHECK(d.omega_squared == qv * qv * kv * kv);
        CHECK(d.multiplicity == 2);
        // Numeric oracle: det(i w g0 + i k q gx) vanishes at w = qk.
        std::complex<double> w = (qv * kv).evaluate({});
        CHECK(std::abs(d.determinant.evaluate({{"omega", w}})) < 1e-9);
        CHECK(std::abs(d.determinant.evaluate({{"omega", w + 0.5}})) > 1e-3);
        REQUIRE(d.residual);
        CHECK(*d.residual < 1e-8);
      }
    }
  }

  TEST_CASE("symbolic dispersion") {
    DispersionResult d = dispersion_1p1(q, CoeffExpr::param("k"), 6);
    CHECK(d.omega_squared == q * q * CoeffExpr::param("k").pow(2));
    CHECK_FALSE(d.residual);
  }

  TEST_CASE("dispersion refuses vanishing q-integers") {
    CHECK_THROWS_AS(dispersion_1p1(CoeffExpr(-1), CoeffExpr(1), 4), QFactorialZero);
  }
}
