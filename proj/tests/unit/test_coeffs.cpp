#include <doctest.h>

#include <cmath>
#include <complex>

#include "generators.hpp"
#include "metriq/coeff_expr.hpp"
#include "metriq/errors.hpp"
#include "metriq/params.hpp"

using namespace metriq;
using cd = std::complex<double>;

namespace {

CoeffExpr P(const char* s) { return parse_coeff(s); }

bool close(cd a, cd b) { return std::abs(a - b) <= 1e-9 * (1 + std::abs(b)); }

}  // namespace

TEST_SUITE("coeffs") {
  TEST_CASE("gaussian rationals") {
    GaussRational a(mpq_class(1), mpq_class(2)), b(mpq_class(3), mpq_class(-1));
    CHECK(a * b == GaussRational(mpq_class(5), mpq_class(5)));
    CHECK((a / b) * b == a);
    CHECK(GaussRational::i().pow(2) == GaussRational(-1));
    CHECK(GaussRational(2).pow(-3) == GaussRational(mpq_class(1, 8)));
    CHECK(a.norm() == 5);
    CHECK_THROWS_AS(a / GaussRational(0), DivisionByZero);
  }

  TEST_CASE("polynomial gcd and exact division") {
    Polynomial x = Polynomial::var("x");
    Polynomial a = (x - GaussRational(1)) * (x + GaussRational(2));
    Polynomial b = (x - GaussRational(1)) * (x + GaussRational(3));
    CHECK(Polynomial::gcd(a, b) == x - GaussRational(1));
    auto q = Polynomial::divide_exact(a, x + GaussRational(2));
    REQUIRE(q);
    CHECK(*q == x - GaussRational(1));
    CHECK_FALSE(Polynomial::divide_exact(a, x + GaussRational(5)));
    CHECK(Polynomial::gcd(Polynomial(), Polynomial()).is_zero());
  }

  TEST_CASE("canonical form is structural") {
    CHECK(P("(q^2 - 1)/(q - 1)") == P("q + 1"));
    CHECK(P("1/q + 1/q^2") == P("(q + 1)/q^2"));
    CHECK(P("g11*g22/g22") == P("g11"));
    CHECK(P("i*i") == CoeffExpr(-1));
    CHECK(P("q^-2") == P("q^2").inverse());
    CHECK_THROWS_AS(P("1/(q - q)"), DivisionByZero);
  }

  TEST_CASE("q-integers as rational functions") {
    CoeffExpr q = CoeffExpr::param("q");
    for (int n = 1; n <= 8; ++n) {
      CoeffExpr sum;
      for (int k = 0; k < n; ++k) sum += q.pow(k);
      CHECK((q.pow(n) - 1) / (q - 1) == sum);
    }
  }

  TEST_CASE("square roots of positive parameters") {
    CHECK(P("q^2").sqrt() == P("q"));
    CHECK(P("q").sqrt().pow(2) == P("q"));
    CHECK(P("4*hbar*q^3").sqrt() * P("4*hbar*q^3").sqrt() == P("4*hbar*q^3"));
    CHECK(P("q^(1/2)") * P("q^(1/2)") == P("q"));
    CHECK_THROWS_AS(P("g11").sqrt(), UnsupportedRoot);
    CHECK_THROWS_AS(P("q + 1").sqrt(), UnsupportedRoot);
  }

  TEST_CASE("substitution") {
    CoeffExpr e = P("(q^3 - 1)/(q - 1)");
    CHECK(e.substitute({{"q", CoeffExpr(2)}}) == CoeffExpr(7));
    CHECK(P("g11*g22 - g12^2").substitute({{"g11", CoeffExpr(1)}, {"g12", P("q")}}) == P("g22 - q^2"));
    CHECK_THROWS_AS(P("1/(q - 2)").substitute({{"q", CoeffExpr(2)}}), DivisionByZero);
  }

  TEST_CASE("parser errors carry offsets") {
    try {
      P("q + * 2");
      FAIL("no exception");
    } catch (const SyntaxError& e) {
      CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(P("q^"), SyntaxError);
    CHECK_THROWS_AS(P("(q"), SyntaxError);
  }

  TEST_CASE("exponent environment") {
    CHECK(parse_coeff("q^n", {{"n", 3}}) == P("q^3"));
    CHECK(parse_coeff("-q^(-n)", {{"n", 2}}) == P("-1/q^2"));
  }

  TEST_CASE("reserved parameters") {
    auto& reg = ParamRegistry::global();
    for (const char* p : {"q", "hbar", "Psi", "Pi", "Phi"}) CHECK(reg.is_positive(p));
    for (const auto& g : metric_component_names()) CHECK_FALSE(reg.is_positive(g));
    CHECK(metric_component_names().size() == 10);
  }

  TEST_CASE("arithmetic agrees with floating-point evaluation") {
    testing::Gen g(11);
    std::map<std::string, cd> at{{"q", 1.37}, {"hbar", 0.61}, {"g11", cd(-0.8, 0.3)}, {"g22", 2.2}};
    for (int i = 0; i < 300; ++i) {
      CoeffExpr a = g.coeff(), b = g.nonzero_coeff();
      cd va = a.evaluate(at), vb = b.evaluate(at);
      CHECK(close((a + b).evaluate(at), va + vb));
      CHECK(close((a * b).evaluate(at), va * vb));
      CHECK(close((a / b).evaluate(at), va / vb));
    }
  }
}
