// Serial reference vs OpenMP kernels on a synthetic dataset.

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "bepeval/evaluation.hpp"
#include "oracles.hpp"

namespace {

const std::vector<bepeval::Frame>& dataset(int frames) {
    static std::map<int, std::vector<bepeval::Frame>> cache;
    auto it = cache.find(frames);
    if (it == cache.end()) {
        oracle::BoxGen gen(42);
        it = cache.emplace(frames, oracle::random_dataset(gen, frames, 8)).first;
    }
    return it->second;
}

const bepeval::TpCriterion& criterion() {
    static const auto c = bepeval::TpCriterion::dual(bepeval::MetricSpec::bep2(), std::sqrt(0.5), 0.75);
    return c;
}

void BM_EvaluateSerial(benchmark::State& state) {
    const auto& frames = dataset(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bepeval::serial::evaluate_dataset(frames, criterion()));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateParallel(benchmark::State& state) {
    const auto& frames = dataset(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bepeval::evaluate_dataset(frames, criterion()));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
    const auto& frames = dataset(static_cast<int>(state.range(0)));
    const auto metrics = bepeval::default_sweep_metrics();
    const auto axes = bepeval::SweepAxes::defaults();
    for (auto _ : state) benchmark::DoNotOptimize(bepeval::serial::sweep(frames, metrics, axes));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto& frames = dataset(static_cast<int>(state.range(0)));
    const auto metrics = bepeval::default_sweep_metrics();
    const auto axes = bepeval::SweepAxes::defaults();
    for (auto _ : state) benchmark::DoNotOptimize(bepeval::sweep(frames, metrics, axes));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
