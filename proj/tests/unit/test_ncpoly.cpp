#include <doctest.h>

#include "generators.hpp"
#include "metriq/errors.hpp"
#include "metriq/ncpoly.hpp"

using namespace metriq;

TEST_SUITE("ncpoly") {
  TEST_CASE("term order") {
    WordLess less;
    using G = Generator;
    CHECK(less({G::x, G::p_x}, {G::p_x, G::x}));
    CHECK(less({G::p_z}, {G::x, G::x}));
    CHECK(is_ordered({G::x, G::y, G::p_x, G::p_x}));
    CHECK_FALSE(is_ordered({G::p_x, G::x}));
    CHECK(is_ordered({G::p_x, G::x}, GeneratorOrder::momentum_first()));
  }

  TEST_CASE("order is compatible with concatenation") {
    testing::Gen g(5);
    WordLess less;
    for (int i = 0; i < 500; ++i) {
      Word a = g.word(4), b = g.word(4), c = g.word(3), d = g.word(3);
      if (!less(a, b)) continue;
      Word ca = c, cb = c;
      ca.insert(ca.end(), a.begin(), a.end());
      cb.insert(cb.end(), b.begin(), b.end());
      ca.insert(ca.end(), d.begin(), d.end());
      cb.insert(cb.end(), d.begin(), d.end());
      CHECK(less(ca, cb));
    }
  }

  TEST_CASE("multiplication is noncommutative") {
    NCPoly x = NCPoly::gen(Generator::x), p = NCPoly::gen(Generator::p_x);
    CHECK(x * p != p * x);
    CHECK((x + p).pow(2) == x * x + x * p + p * x + p * p);
    CHECK((x * p).degree() == 2);
    CHECK(NCPoly(3).as_coeff() == CoeffExpr(3));
  }

  TEST_CASE("parse and print") {
    NCPoly p = parse_nc("g00*x*p_x + g11*p_x*x + i*g22");
    CHECK(p.coeff({Generator::x, Generator::p_x}) == CoeffExpr::param("g00"));
    CHECK(p.coeff({}) == CoeffExpr::i() * CoeffExpr::param("g22"));
    CHECK(parse_nc(p.str()) == p);
    CHECK(parse_nc("x^3") == NCPoly::gen(Generator::x).pow(3));
    CHECK(parse_nc("(x + y)*(x - y)") == parse_nc("x^2 - x*y + y*x - y^2"));
    CHECK(parse_nc("p_x*x - q^n*x*p_x", {{"n", 2}}) == parse_nc("p_x*x - q^2*x*p_x"));
    CHECK_THROWS_AS(parse_nc("x*"), SyntaxError);
    CHECK_THROWS_AS(parse_nc("x^(1/2)"), SyntaxError);
  }

  TEST_CASE("substitution acts on coefficients") {
    NCPoly p = parse_nc("g11*x*y - g22*y*x");
    NCPoly s = p.substitute({{"g11", CoeffExpr(2)}, {"g22", CoeffExpr(2)}});
    CHECK(s == parse_nc("2*x*y - 2*y*x"));
    CHECK(p.substitute({{"g11", CoeffExpr(0)}, {"g22", CoeffExpr(0)}}).is_zero());
  }
}
