#include <random>

#include <benchmark/benchmark.h>

#include "heapgame/oracle.hpp"
#include "heapgame/strategy.hpp"

using namespace heapgame;

namespace {

// Args: k, bound.
void apply_shapes(benchmark::internal::Benchmark* b) {
  b->Args({3, 15})->Args({4, 10})->Args({5, 7})->Unit(benchmark::kMillisecond);
}

void BM_grundy_serial(benchmark::State& state) {
  const oracle::PositionIndex index(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::grundy_serial(index));
  state.counters["positions"] = static_cast<double>(index.size());
}
BENCHMARK(BM_grundy_serial)->Apply(apply_shapes);

void BM_grundy_parallel(benchmark::State& state) {
  const oracle::PositionIndex index(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::grundy_parallel(index));
  state.counters["positions"] = static_cast<double>(index.size());
  state.counters["threads"] = oracle::kernel_threads();
}
BENCHMARK(BM_grundy_parallel)->Apply(apply_shapes)->UseRealTime();

void BM_outcome_serial(benchmark::State& state) {
  const oracle::PositionIndex index(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::outcome_serial(index));
}
BENCHMARK(BM_outcome_serial)->Apply(apply_shapes);

void BM_outcome_parallel(benchmark::State& state) {
  const oracle::PositionIndex index(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::outcome_parallel(index));
}
BENCHMARK(BM_outcome_parallel)->Apply(apply_shapes)->UseRealTime();

void BM_analyze_large(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Position> positions;
  for (int i = 0; i < 1024; ++i) {
    std::vector<Tokens> heaps(state.range(0));
    for (auto& h : heaps) h = (Tokens{1} << 60) - 1 - (rng() >> 24);
    positions.push_back(Position::canonical(heaps));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(analyze(positions[i++ & 1023]));
}
BENCHMARK(BM_analyze_large)->Arg(3)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
