#include <doctest.h>

#include <complex>

#include "generators.hpp"
#include "metriq/catalog.hpp"
#include "metriq/clifford.hpp"
#include "metriq/errors.hpp"
#include "metriq/params.hpp"
#include "metriq/qcalc.hpp"
#include "properties.hpp"

using namespace metriq;
using metriq::testing::Gen;
using metriq::testing::PropertyResult;

namespace {

constexpr int kCases = 1000;

void require(const PropertyResult& r) {
  INFO(r.name << ": " << r.failures << " of " << r.cases << " failed; first: " << r.first_failure);
  CHECK(r.cases >= kCases);
  CHECK(r.ok());
}

using cd = std::complex<double>;

bool close(cd a, cd b) { return std::abs(a - b) <= 1e-8 * (1 + std::abs(b)); }

}  // namespace

TEST_SUITE("normal_form") {
  TEST_CASE("idempotence") { require(testing::prop_nf_idempotence(kCases)); }
  TEST_CASE("linearity") { require(testing::prop_nf_linearity(kCases)); }
}

TEST_SUITE("parser") {
  TEST_CASE("round trip") { require(testing::prop_parser_roundtrip(kCases)); }
}

TEST_SUITE("substitution") {
  TEST_CASE("commutes with normal form") { require(testing::prop_subst_nf(kCases)); }
}

TEST_SUITE("oracle") {
  TEST_CASE("breadth-first rewriting agrees") { require(testing::prop_bfs_oracle(kCases)); }
}

TEST_SUITE("coeffs") {
  TEST_CASE("field laws") {
    Gen g(101);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      CoeffExpr a = g.coeff(), b = g.coeff(), c = g.coeff(), n = g.nonzero_coeff();
      bad += !(a + b == b + a && a * b == b * a);
      bad += !((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c));
      bad += !(a * (b + c) == a * b + a * c);
      bad += !(n * n.inverse() == CoeffExpr(1) && (a / n) * n == a);
      bad += !(a - a == CoeffExpr());
    }
    CHECK(bad == 0);
  }

  TEST_CASE("evaluation is a homomorphism") {
    Gen g(102);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      // Off-grid values keep clear of poles such as q = 1.
      std::map<std::string, cd> at{{"q", 0.513 + g.uniform(1, 20) / 10.0},
                                   {"hbar", 0.257 + g.uniform(1, 20) / 10.0},
                                   {"g11", cd(g.uniform(-9, 9) + 0.3, g.uniform(-3, 3))},
                                   {"g22", cd(g.uniform(-9, 9) + 0.7, 0)}};
      CoeffExpr a = g.coeff(), b = g.nonzero_coeff();
      bad += !close((a * b + a).evaluate(at), a.evaluate(at) * b.evaluate(at) + a.evaluate(at));
      bad += !close((a / b).evaluate(at), a.evaluate(at) / b.evaluate(at));
    }
    CHECK(bad == 0);
  }

  TEST_CASE("parse of printed form") {
    Gen g(103);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      CoeffExpr a = g.coeff();
      bad += !(parse_coeff(a.str()) == a);
    }
    CHECK(bad == 0);
  }

  TEST_CASE("square roots of positive monomials") {
    Gen g(104);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      // Even unit exponents, so the root is representable.
      CoeffExpr m = CoeffExpr::param("q").pow_units(2 * g.uniform(-6, 6)) *
                    CoeffExpr::param("hbar").pow_units(2 * g.uniform(-4, 4)) * CoeffExpr(g.uniform(1, 5)).pow(2);
      CoeffExpr r = m.sqrt();
      bad += !(r * r == m);
    }
    CHECK(bad == 0);
  }

  TEST_CASE("polynomial gcd keeps planted factors") {
    Gen g(109);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      Polynomial a = g.coeff().num(), b = g.coeff().num(), c = g.nonzero_coeff().num();
      if (a.is_zero() || b.is_zero()) continue;
      Polynomial ac = a * c, bc = b * c;
      Polynomial d = Polynomial::gcd(ac, bc);
      bad += !(Polynomial::divide_exact(ac, d) && Polynomial::divide_exact(bc, d) && Polynomial::divide_exact(d, c));
    }
    CHECK(bad == 0);
  }

  TEST_CASE("substitution is a homomorphism") {
    Gen g(105);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      Bindings b{{"g11", g.nonzero_coeff()}, {"hbar", CoeffExpr(g.uniform(1, 4))}};
      CoeffExpr x = g.coeff(), y = g.coeff();
      try {
        bad += !((x * y + x).substitute(b) == x.substitute(b) * y.substitute(b) + x.substitute(b));
      } catch (const Error&) {
        // A denominator may vanish under the binding; that is not a law violation.
      }
    }
    CHECK(bad == 0);
  }
}

TEST_SUITE("tables") {
  TEST_CASE("random tables round trip") {
    Gen g(106);
    const std::vector<std::string> params = {"q", "hbar", "Psi", "Pi", "Phi"};
    const auto& names = metric_component_names();
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      Table t;
      t.table_id = "random" + std::to_string(i);
      t.algebra = static_cast<AlgebraChoice>(g.uniform(0, 2));
      for (int r = g.uniform(0, 3); r > 0; --r) {
        TableRow row;
        row.table_id = t.table_id;
        row.index = t.rows.size();
        row.key["j"] = static_cast<long>(g.uniform(1, 3));
        if (g.coin()) row.key["k"] = std::string(g.coin() ? "a" : "b");
        row.algebra = t.algebra;
        if (g.coin(0.2)) {
          row.algebra = static_cast<AlgebraChoice>(g.uniform(0, 1));
          row.algebra_override = row.algebra != t.algebra;
          if (!row.algebra_override) row.algebra = t.algebra;
        }
        for (int k = g.uniform(1, 4); k > 0; --k) row.bindings[g.pick(names)] = g.coeff().str();
        if (g.coin()) row.bindings[g.pick(params)] = g.nonzero_coeff().str();
        if (g.coin()) {
          row.target = g.ncpoly(3, 2).str();
        } else {
          row.expected_dirac = "gamma0*d_t - gammax*d_x";
        }
        t.rows.push_back(std::move(row));
      }
      Table back = parse_table(save_table(t));
      bad += !(back.rows == t.rows && save_table(back) == save_table(t));
    }
    CHECK(bad == 0);
  }
}

TEST_SUITE("clifford") {
  TEST_CASE("Cl(0,3) multiplication is associative and bilinear") {
    Gen g(107);
    auto element = [&g] {
      Cl03Element e;
      for (int m = 0; m < 8; ++m) {
        if (g.coin(0.6)) e += Cl03Element::blade(m, g.monomial());
      }
      return e;
    };
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      Cl03Element a = element(), b = element(), c = element();
      bad += !(cl03_mul(cl03_mul(a, b), c) == cl03_mul(a, cl03_mul(b, c)));
      bad += !(cl03_mul(a, b + c) == cl03_mul(a, b) + cl03_mul(a, c));
    }
    CHECK(bad == 0);
  }
}

TEST_SUITE("qcalc") {
  TEST_CASE("q-Weyl normal form is idempotent and multiplicative") {
    Gen g(108);
    auto poly = [&g] {
      QWeylPoly p;
      for (int t = g.uniform(1, 3); t > 0; --t) {
        std::string w;
        for (int k = g.uniform(0, 4); k > 0; --k) w += g.coin() ? 'X' : 'D';
        p += QWeylPoly::word(w, g.monomial());
      }
      return p;
    };
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      QWeylPoly a = poly(), b = poly();
      QWeylPoly na = qweyl_normal_form(a);
      bad += !(qweyl_normal_form(na) == na);
      bad += !(qweyl_normal_form(a * b) == qweyl_normal_form(na * qweyl_normal_form(b)));
    }
    CHECK(bad == 0);
  }
}
