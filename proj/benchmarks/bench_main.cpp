#include <benchmark/benchmark.h>

#include "designlab/designs.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/path_sum.hpp"
#include "designlab/qalgsim.hpp"

using namespace designlab;

static void BM_GramStateFp(benchmark::State& state) {
  const auto s = phase_state_set(6, static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(frame_potential(s, 2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GramStateFp)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

static void BM_GramUnitaryFp(benchmark::State& state) {
  const auto s = pauli_set(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(frame_potential(s, 2));
}
BENCHMARK(BM_GramUnitaryFp)->DenseRange(1, 3);

static void BM_MaterializeClifford2(benchmark::State& state) {
  const auto s = clifford_set(2);
  for (auto _ : state) benchmark::DoNotOptimize(materialize_unitaries(s));
}
BENCHMARK(BM_MaterializeClifford2)->Unit(benchmark::kMillisecond);

static void BM_SwapTest(benchmark::State& state) {
  const auto s = computational_basis_set(2);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(swap_test_decide(s, 1, {0.5, 0.3, 100000, seed++}));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SwapTest);

static void BM_PathSum(benchmark::State& state) {
  Circuit c(3);
  c.add(Gate::single(GateKind::H, 0)).add(Gate::single(GateKind::H, 1)).add(Gate::toffoli(0, 1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(path_sum_count(c, {2, 1, 0}));
}
BENCHMARK(BM_PathSum)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
