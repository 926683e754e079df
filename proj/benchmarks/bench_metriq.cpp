#include <benchmark/benchmark.h>

#include "metriq/coeff_expr.hpp"
#include "metriq/heis.hpp"

using namespace metriq;

static void BM_NormalFormMinkowski(benchmark::State& state) {
  RewriteSystem rs = build_rewrite_system(relations_m1(MetricSpec::minkowski()), Mode::completed);
  NCPoly p = parse_nc("p_z*p_y*p_x*z*y*x").pow(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(p, rs));
}
BENCHMARK(BM_NormalFormMinkowski)->Arg(1)->Arg(2);

static void BM_NormalFormSymbolic(benchmark::State& state) {
  RewriteSystem rs = build_rewrite_system(relations_m1(MetricSpec::diagonal_symbolic()), Mode::completed);
  NCPoly p = parse_nc("p_z*p_y*p_x*z*y*x");
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(p, rs));
}
BENCHMARK(BM_NormalFormSymbolic);

static void BM_ConfluenceSymbolic(benchmark::State& state) {
  RewriteSystem rs = build_rewrite_system(relations_m1(MetricSpec::symbolic()), Mode::completed);
  for (auto _ : state) benchmark::DoNotOptimize(check_confluence(rs));
}
BENCHMARK(BM_ConfluenceSymbolic);

static void BM_PolynomialGcd(benchmark::State& state) {
  Polynomial x = Polynomial::var("g11"), y = Polynomial::var("g22"), q = Polynomial::var("q");
  Polynomial common = x * y - q.pow(2) + GaussRational(3);
  Polynomial a = common * (x.pow(3) + y * q), b = common * (y.pow(2) - x * q + GaussRational(1));
  for (auto _ : state) benchmark::DoNotOptimize(Polynomial::gcd(a, b));
}
BENCHMARK(BM_PolynomialGcd);

static void BM_CoeffSimplify(benchmark::State& state) {
  CoeffExpr a = parse_coeff("(g11*g22 - g12^2)/(g11 + q)"), b = parse_coeff("(g11 + q)/(g22*q - 1)");
  for (auto _ : state) benchmark::DoNotOptimize(a * b + a / b);
}
BENCHMARK(BM_CoeffSimplify);
BENCHMARK_MAIN();
