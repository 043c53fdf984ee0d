#include <benchmark/benchmark.h>

#include "cheby/bounds.hpp"
#include "cheby/calculus.hpp"
#include "cheby/expr.hpp"
#include "cheby/verify.hpp"

using cheby::Expr;
using cheby::Interval;

namespace {

const Interval kUnit(0.0, 1.0);

Expr smooth_expr() { return cheby::parse("exp(x/2)*sin(3*x) + x^3 - 2*x"); }

Expr kinked_expr() { return cheby::parse("abs(x-0.3) + abs(x-0.7)*x"); }

}  // namespace

static void BM_Parse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheby::parse("exp(x/2)*sin(3*x) + x^3 - 2*x"));
  }
}
BENCHMARK(BM_Parse);

static void BM_Eval(benchmark::State& state) {
  const Expr e = smooth_expr();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.eval(t));
    t += 1e-6;
    if (t > 1.0) t = 0.0;
  }
}
BENCHMARK(BM_Eval);

static void BM_Differentiate(benchmark::State& state) {
  const Expr e = smooth_expr();
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.derivative());
  }
}
BENCHMARK(BM_Differentiate);

static void BM_IntegrateSmooth(benchmark::State& state) {
  const Expr e = smooth_expr();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheby::integrate(e, kUnit, 1e-10).value);
  }
}
BENCHMARK(BM_IntegrateSmooth);

static void BM_IntegrateKinked(benchmark::State& state) {
  const Expr e = kinked_expr();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheby::integrate(e, kUnit, 1e-10).value);
  }
}
BENCHMARK(BM_IntegrateKinked);

static void BM_ChebyshevT(benchmark::State& state) {
  const Expr f = smooth_expr();
  const Expr g = cheby::parse("x^2/2 - cos(x)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheby::chebyshev_T(f, g, kUnit));
  }
}
BENCHMARK(BM_ChebyshevT);

static void BM_Profile(benchmark::State& state) {
  const Expr f = smooth_expr();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheby::profile(f, kUnit));
  }
}
BENCHMARK(BM_Profile);

static void BM_ConvexPairBound(benchmark::State& state) {
  const Expr f = cheby::parse("x^2/6");
  const Expr g = cheby::parse("x^3/3 + x");
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheby::bounds::convex_pair_deriv_bound(f, g, kUnit));
  }
}
BENCHMARK(BM_ConvexPairBound);

static void BM_SuiteCase(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheby::verify::run_suite(
        cheby::bounds::TheoremId::ConvexPairDeriv, 1, seed++));
  }
}
BENCHMARK(BM_SuiteCase);

BENCHMARK_MAIN();
