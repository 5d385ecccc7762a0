#include <benchmark/benchmark.h>

#include "kstar/decompose.hpp"
#include "kstar/moments.hpp"
#include "kstar/pairing.hpp"
#include "kstar/thresholds.hpp"

using namespace kstar;

static void BM_CheckP1(benchmark::State& state) {
  const Params p{static_cast<int>(state.range(0)), static_cast<int>(state.range(0) / 2 + 1)};
  for (auto _ : state) benchmark::DoNotOptimize(check_P1(p));
}
BENCHMARK(BM_CheckP1)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ExactEY2(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(exact_EY2(n, 4, 3));
}
BENCHMARK(BM_ExactEY2)->Arg(6)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Multigraph g = sample_simple_graph(n, 4, 1).graph;
  for (auto _ : state) benchmark::DoNotOptimize(solve(g, 3).status);
}
BENCHMARK(BM_Solve)->Arg(12)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
