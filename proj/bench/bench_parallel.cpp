// Serial reference vs OpenMP kernels.
//
//   ./bench_parallel --benchmark_filter=Series
//   OMP_NUM_THREADS=4 ./bench_parallel

#include <benchmark/benchmark.h>

#include <cmath>

#include "shear/bounds_engine.hpp"
#include "shear/montecarlo.hpp"
#include "shear/series.hpp"

using namespace shear;

namespace {

const ShearParams kUnit = ShearParams::make(1, 1);

double block_fn(int a, int b) { return std::log1p(std::sqrt(double(a) * b) + a); }

void BM_SeriesSerial(benchmark::State& state) {
    const int A = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(block_sum_serial(block_fn, A));
}

void BM_SeriesParallel(benchmark::State& state) {
    const int A = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(block_sum(block_fn, A));
}

void BM_LyapunovMcSerial(benchmark::State& state) {
    const McConfig cfg{static_cast<std::uint64_t>(state.range(0)), 16, 42, 1};
    for (auto _ : state) benchmark::DoNotOptimize(lyapunov_mc_serial(kUnit, cfg).mean);
    state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}

void BM_LyapunovMcParallel(benchmark::State& state) {
    const McConfig cfg{static_cast<std::uint64_t>(state.range(0)), 16, 42, 1};
    for (auto _ : state) benchmark::DoNotOptimize(lyapunov_mc(kUnit, cfg).mean);
    state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}

void BM_StandardExhaustiveSerial(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(standard_bound_serial(k, kUnit, Exhaustive{}));
}

void BM_StandardExhaustiveParallel(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(standard_bound(k, kUnit, Exhaustive{}));
}

void BM_LyapunovBounds(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lyapunov_bounds(kUnit, BoundFamily::Improved).envelope);
}

}  // namespace

BENCHMARK(BM_SeriesSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_SeriesParallel)->Arg(64)->Arg(256);
BENCHMARK(BM_LyapunovMcSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyapunovMcParallel)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StandardExhaustiveSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StandardExhaustiveParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyapunovBounds)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
