#include <doctest.h>

#include <cmath>

#include "metriq/errors.hpp"
#include "metriq/qcalc.hpp"

using namespace metriq;

namespace {

CoeffExpr q() { return q_param(); }

}  // namespace

TEST_SUITE("qcalc") {
  TEST_CASE("q-integers in both conventions") {
    for (int n = 0; n <= 10; ++n) {
      CHECK(qnum(n, QConvention::basic) == (q().pow(n) - 1) / (q() - 1));
      CHECK(qnum(n, QConvention::symmetric) == (q().pow(n) - q().pow(-n)) / (q() - q().inverse()));
    }
    CHECK(qnum(4, QConvention::basic, CoeffExpr(1)) == CoeffExpr(4));
    CHECK(qnum(3, QConvention::symmetric, CoeffExpr(2)) == parse_coeff("21/4"));
  }

  TEST_CASE("q-factorials") {
    CHECK(qfact(0, QConvention::basic) == CoeffExpr(1));
    CHECK(qfact(3, QConvention::basic) == parse_coeff("(1 + q)*(1 + q + q^2)"));
    CHECK(qfact(5, QConvention::basic, CoeffExpr(1)) == CoeffExpr(120));
  }

  TEST_CASE("q-Weyl normal form") {
    QWeylPoly X = QWeylPoly::X(), D = QWeylPoly::D();
    CHECK(qweyl_normal_form(D * X) == QWeylPoly(1) + (X * D).scaled(q()));
    // Dq X^n = [n] X^(n-1) + q^n X^n Dq
    for (int n = 1; n <= 6; ++n) {
      QWeylPoly lhs = qweyl_normal_form(D * X.pow(static_cast<unsigned>(n)));
      CHECK(lhs.coeff(n - 1, 0) == qnum(n, QConvention::basic));
      CHECK(lhs.coeff(n, 1) == q().pow(n));
      CHECK(lhs.terms().size() == 2);
    }
  }

  TEST_CASE("q-exponential is an eigenfunction") {
    for (auto conv : {QConvention::basic, QConvention::symmetric}) {
      EigenResidual r = qexp_eigen_check(parse_coeff("k"), 10, conv);
      CHECK(r.zero() == (conv == QConvention::basic));
    }
    QSeries s = qexp_truncated(CoeffExpr(1), 4, QConvention::basic, CoeffExpr(1));
    CHECK(s.c[4] == parse_coeff("1/24"));
  }

  TEST_CASE("q-exponential against a floating-point sum") {
    const double qv = 0.5, a = 0.7;
    QSeries s = qexp_truncated(CoeffExpr::rational(7, 10), 12, QConvention::basic, CoeffExpr::rational(1, 2));
    double fact = 1, pw = 1;
    for (int n = 0; n <= 12; ++n) {
      if (n > 0) {
        fact *= (std::pow(qv, n) - 1) / (qv - 1);
        pw *= a;
      }
      CHECK(s.c[static_cast<std::size_t>(n)].evaluate({}).real() == doctest::Approx(pw / fact));
    }
  }

  TEST_CASE("vanishing q-integers are refused") {
    CHECK_THROWS_AS(qexp_truncated(CoeffExpr(1), 3, QConvention::basic, CoeffExpr(-1)), QFactorialZero);
  }

  TEST_CASE("oscillator identity") {
    OscillatorReport r = oscillator_identity(32);
    CHECK(r.all_pass());
    CHECK(r.checks.size() >= 33);
    for (int n = 0; n <= 32; ++n) {
      CHECK(qnum(n + 1, QConvention::symmetric) - q() * qnum(n, QConvention::symmetric) == q().pow(-n));
    }
  }
}
