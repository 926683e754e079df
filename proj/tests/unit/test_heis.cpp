#include <doctest.h>

#include "metriq/errors.hpp"
#include "metriq/heis.hpp"

using namespace metriq;
using G = Generator;

namespace {

NCPoly N(const char* s) { return parse_nc(s); }

MetricSpec diag(const char* g0, const char* g1, const char* g2, const char* g3) {
  MetricSpec g;
  g.set(0, 0, parse_coeff(g0));
  g.set(1, 1, parse_coeff(g1));
  g.set(2, 2, parse_coeff(g2));
  g.set(3, 3, parse_coeff(g3));
  return g;
}

}  // namespace

TEST_SUITE("heis") {
  TEST_CASE("relation sets") {
    CHECK(relations_m1(MetricSpec::symbolic()).relations.size() == 9);
    CHECK(relations_m2(MetricSpec::symbolic()).relations.size() == 12);
    RelationSet m1 = relations_m1(MetricSpec::minkowski());
    REQUIRE(m1.find("x-p_x"));
    CHECK(m1.find("x-p_x")->poly == N("x*p_x - p_x*x - i"));
    CHECK(m1.find("x-y")->poly == N("y*x - x*y"));
    CHECK(m1.find("x-p_y") == nullptr);
  }

  TEST_CASE("metric symmetry") {
    MetricSpec g;
    g.set(3, 2, parse_coeff("q"));
    CHECK(g.g(2, 3) == parse_coeff("q"));
    CHECK(component_name(3, 1) == "g13");
  }

  TEST_CASE("canonical normal forms") {
    RewriteSystem rs = build_rewrite_system(relations_m1(MetricSpec::minkowski()), Mode::completed);
    CHECK(normal_form(N("p_x*x"), rs) == N("x*p_x - i"));
    CHECK(normal_form(N("p_x*p_x*x"), rs) == N("x*p_x^2 - 2*i*p_x"));
    CHECK(normal_form(N("p_y*x"), rs) == N("x*p_y"));
    // [x, p_x^3] = 3i p_x^2
    CHECK(normal_form(N("x*p_x^3 - p_x^3*x"), rs) == N("3*i*p_x^2"));
  }

  TEST_CASE("strict mode leaves unrelated pairs alone") {
    RewriteSystem rs = build_rewrite_system(relations_m1(MetricSpec::minkowski()), Mode::strict);
    CHECK(rs.rule_for(G::p_y, G::x) == nullptr);
    CHECK(normal_form(N("p_y*x"), rs) == N("p_y*x"));
  }

  TEST_CASE("degenerate metrics cannot be oriented") {
    try {
      build_rewrite_system(relations_m1(diag("1", "0", "-1", "-1")), Mode::completed);
      FAIL("no exception");
    } catch (const DegenerateMetric& e) {
      CHECK_FALSE(e.vanishing().empty());
    }
  }

  TEST_CASE("confluence") {
    auto mink = check_confluence(build_rewrite_system(relations_m1(MetricSpec::minkowski()), Mode::completed));
    CHECK(mink.overlaps_checked == 20);
    CHECK(mink.resolved());
    auto m2 = check_confluence(build_rewrite_system(relations_m2(MetricSpec::minkowski()), Mode::completed));
    CHECK(m2.resolved());
    auto sym = check_confluence(build_rewrite_system(relations_m1(MetricSpec::symbolic()), Mode::completed));
    CHECK(sym.obstructions.size() == 14);
    for (const auto& ob : sym.obstructions) {
      CHECK(ob.overlap.size() == 3);
      CHECK(ob.residual == ob.via_left - ob.via_right);
      CHECK_FALSE(ob.residual.is_zero());
    }
    auto sym2 = check_confluence(build_rewrite_system(relations_m2(MetricSpec::symbolic()), Mode::completed));
    CHECK(sym2.obstructions.size() == 20);
  }

  TEST_CASE("a diagonal metric with equal spatial entries is confluent") {
    auto rep = check_confluence(build_rewrite_system(relations_m1(diag("q", "-2", "-2", "-2")), Mode::completed));
    CHECK(rep.resolved());
    auto bad = check_confluence(build_rewrite_system(relations_m1(diag("1", "-q", "-2", "-2")), Mode::completed));
    CHECK_FALSE(bad.resolved());
  }

  TEST_CASE("embedding with rescaling") {
    MetricSpec g = diag("1", "-q^2", "-q", "-1");
    RelationSet rels = relations_m1(g);
    EmbeddingVerdict v = verify_embedding(rels, {}, N("x*p_x - q^2*p_x*x - i*q"));
    CHECK(v.status == Status::pass);
    CHECK(v.matched == "x-p_x");
    CHECK(v.scale == CoeffExpr(1));
    EmbeddingVerdict scaled = verify_embedding(rels, {}, N("2*x*p_x - 2*q^2*p_x*x - 2*i*q"));
    CHECK(scaled.status == Status::pass);
    CHECK(scaled.scale == parse_coeff("1/2"));
    EmbeddingVerdict exact = verify_embedding(rels, {}, N("2*x*p_x - 2*q^2*p_x*x - 2*i*q"), false);
    CHECK(exact.status == Status::fail);
  }

  TEST_CASE("a match that needs hbar = 1 is reported as a failure") {
    RelationSet rels = relations_m1(MetricSpec::minkowski());
    EmbeddingVerdict v = verify_embedding(rels, {}, N("x*p_x - p_x*x - i*hbar"));
    CHECK(v.status == Status::fail);
    CHECK(v.hbar_dropped);
    CHECK(v.matched == "x-p_x");
  }

  TEST_CASE("Verma truncation on the canonical algebra") {
    VermaTruncation v = verma_truncate(MetricSpec::minkowski(), Algebra::m1, 4);
    CHECK(v.basis.size() == 35);
    CHECK(v.interior_ok());
    // x p_x^d v0 = i d p_x^(d-1) v0
    const auto& xcols = v.action[index(G::x)];
    for (int d = 1; d <= 4; ++d) {
      const auto& col = xcols[static_cast<std::size_t>(v.basis_index(d, 0, 0))];
      REQUIRE(col.size() == 1);
      CHECK(col.at(v.basis_index(d - 1, 0, 0)) == CoeffExpr::i() * CoeffExpr(d));
    }
    // p_y raises p_x^1 to p_x p_y
    const auto& pcol = v.action[index(G::p_y)][static_cast<std::size_t>(v.basis_index(1, 0, 0))];
    CHECK(pcol.at(v.basis_index(1, 1, 0)) == CoeffExpr(1));
  }

  TEST_CASE("Sylvester rescaling") {
    SylvesterResult r = sylvester_rescale(parse_coeff("1"), parse_coeff("q^2"), parse_coeff("-q"), parse_coeff("4"));
    REQUIRE(r.relations.size() == 3);
    CHECK(r.relations[0] == N("x*p_x - p_x*x - i*q"));
    CHECK(r.relations[1] == N("y*p_y - p_y*y - i*q^(1/2)"));
    CHECK(r.relations[2] == N("z*p_z - p_z*z - 2*i"));
    CHECK_THROWS_AS(sylvester_rescale(parse_coeff("1"), parse_coeff("g11"), parse_coeff("1"), parse_coeff("1")),
                    UnsupportedRoot);
  }

  TEST_CASE("monomial signs") {
    CHECK(monomial_sign(parse_coeff("-2*q^3")) == -1);
    CHECK(monomial_sign(parse_coeff("hbar/q")) == 1);
    CHECK_FALSE(monomial_sign(parse_coeff("g11")));
    CHECK_FALSE(monomial_sign(parse_coeff("i*q")));
    CHECK(monomial_abs(parse_coeff("-q^2")) == parse_coeff("q^2"));
  }
}
