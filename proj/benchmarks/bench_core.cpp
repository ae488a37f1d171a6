#include "ultradist/calculus.hpp"
#include "ultradist/corpus.hpp"
#include "ultradist/distribution.hpp"
#include "ultradist/seminorms.hpp"
#include "ultradist/weights.hpp"

#include <benchmark/benchmark.h>

using namespace ultradist;

static void BM_JetEvalCutoff(benchmark::State& state) {
  const Expr c = cutoff(1.0, 2.0);
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jet_eval(c, 1.3, order));
}
BENCHMARK(BM_JetEvalCutoff)->Arg(4)->Arg(12)->Arg(24);

static void BM_SupDerivatives(benchmark::State& state) {
  const Expr f = standard_corpus(kDefaultSeed, 2)[1].f;
  const Interval s = f.support();
  const Grid g = Grid::for_expr(f, s.lo, s.hi, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sup_derivatives(f, g, 12));
}
BENCHMARK(BM_SupDerivatives)->Arg(101)->Arg(401);

static void BM_GlobalRNorm(benchmark::State& state) {
  const Expr f = standard_corpus(kDefaultSeed, 1)[0].f;
  const RSequence r = linear_rsequence(3.0, 12);
  const WeightSequence w = gevrey(2.0, 12);
  for (auto _ : state) benchmark::DoNotOptimize(global_r_norm(f, r, w, 12, {401, 4.0}));
}
BENCHMARK(BM_GlobalRNorm);

static void BM_CheckM1Exact(benchmark::State& state) {
  const WeightSequence w = gevrey(2.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_m1(w));
}
BENCHMARK(BM_CheckM1Exact)->Arg(100)->Arg(400);

static void BM_SubmultiplicativeExact(benchmark::State& state) {
  const WeightSequence w = gevrey(2.0, 400);
  for (auto _ : state) benchmark::DoNotOptimize(check_submultiplicative(w));
}
BENCHMARK(BM_SubmultiplicativeExact)->Unit(benchmark::kMillisecond);

static void BM_PairGaussian(benchmark::State& state) {
  const Ultradistribution g = density(parse_expr("exp(neg(pow(x,2)))"));
  const Expr phi = cutoff(20.0, 21.0);
  for (auto _ : state) benchmark::DoNotOptimize(pair(g, phi));
}
BENCHMARK(BM_PairGaussian)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
