// Serial reference vs lane kernel vs OpenMP lane kernel on one realization.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "anderson/estimator.hpp"
#include "anderson/operators.hpp"
#include "anderson/potential.hpp"
#include "anderson/spectral.hpp"

namespace {

using namespace anderson;

const TridiagonalOperator& chain(std::int64_t size) {
  static std::int64_t cached_size = -1;
  static TridiagonalOperator op;
  if (cached_size != size) {
    op = anderson_matrix(sample_potential(BernoulliParam(0.3), size, Seed{7, 0}), DisorderParam(4.0));
    cached_size = size;
  }
  return op;
}

const std::vector<double> kEnergies = linspace(0.01, 3.99, 200);

void BM_Serial(benchmark::State& state) {
  const auto& op = chain(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(counting_curve_serial(op, kEnergies, CountMode::Strict));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(kEnergies.size()));
}

void BM_Lanes(benchmark::State& state) {
  const auto& op = chain(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(counting_curve_lanes(op, kEnergies, CountMode::Strict));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(kEnergies.size()));
}

void BM_OpenMP(benchmark::State& state) {
  const auto& op = chain(state.range(0));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(counting_curve(op, kEnergies, CountMode::Strict));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(kEnergies.size()));
  state.counters["threads"] = static_cast<double>(state.range(1));
}

BENCHMARK(BM_Serial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lanes)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->ArgsProduct({{1000000}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
