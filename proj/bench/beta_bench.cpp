// Serial vs OpenMP beta_sequence on random systems. Args: states, semantics index.
#include <benchmark/benchmark.h>

#include "spectrum/engine.hpp"
#include "spectrum/model.hpp"

using namespace spectrum;

namespace {

constexpr int bench_depth = 5;
constexpr SemanticsId bench_semantics[] = {SemanticsId::Trace, SemanticsId::Failures, SemanticsId::ReadyTrace,
                                           SemanticsId::Simulation, SemanticsId::Bisimilarity};

template <bool Parallel>
void lts_beta(benchmark::State& state) {
  Lts lts = random_lts(7, static_cast<std::size_t>(state.range(0)), 3, 0.05);
  SemanticsId sem = bench_semantics[state.range(1)];
  for (auto _ : state) {
    TreeStore store;
    auto t = Parallel ? beta_sequence(lts, sem, bench_depth, store) : beta_sequence_serial(lts, sem, bench_depth, store);
    benchmark::DoNotOptimize(t);
  }
  state.SetLabel(std::string(name(sem)));
}

template <bool Parallel>
void gps_beta(benchmark::State& state) {
  Gps gps = random_gps(11, static_cast<std::size_t>(state.range(0)), 3, 3);
  for (auto _ : state) {
    TreeStore store;
    auto t = Parallel ? beta_sequence(gps, SemanticsId::ProbabilisticTrace, 8, store)
                      : beta_sequence_serial(gps, SemanticsId::ProbabilisticTrace, 8, store);
    benchmark::DoNotOptimize(t);
  }
}

void lts_args(benchmark::internal::Benchmark* b) {
  for (int n : {64, 256})
    for (int s = 0; s < 5; ++s) b->Args({n, s});
}

}  // namespace

BENCHMARK(lts_beta<false>)->Name("lts_beta/serial")->Apply(lts_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(lts_beta<true>)->Name("lts_beta/parallel")->Apply(lts_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(gps_beta<false>)->Name("gps_beta/serial")->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(gps_beta<true>)->Name("gps_beta/parallel")->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
