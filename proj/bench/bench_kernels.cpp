// Serial reference vs OpenMP for the data-parallel kernels: sampled
// monotonicity/Lipschitz ratios, the forward-backward contraction check, and
// parameter sweeps.

#include "nvi/experiment.hpp"
#include "nvi/fb_engine.hpp"
#include "nvi/sampling.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>

namespace {

nvi::Execution mode(const benchmark::State& state) {
    return state.range(1) == 0 ? nvi::Execution::serial : nvi::Execution::parallel;
}

void BM_MonotoneRatios(benchmark::State& state) {
    const auto game = nvi::make_zero_sum_game();
    const auto pairs = nvi::sample_pairs(game.domain, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(nvi::map_ratio_extrema(game.f.eval, pairs, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ContractionCheck(benchmark::State& state) {
    const auto game = nvi::make_zero_sum_game();
    const nvi::FBContext ctx(game.a, game.f, game.g, nvi::PhiParams(1.0, 0.683), nvi::Point{{35.0, 30.0}});
    const auto pairs = nvi::sample_pairs(game.domain, static_cast<int>(state.range(0)), 2);
    auto step = [&](const nvi::Point& v) { return nvi::fb_step(ctx, v); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(nvi::map_ratio_extrema(step, pairs, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Sweep(benchmark::State& state) {
    nvi::RunConfig base;
    base.output = std::filesystem::temp_directory_path() / "nvi_bench_sweep";
    const auto game = nvi::make_zero_sum_game();
    const auto starts = nvi::default_starts(game);
    for (auto _ : state) {
        benchmark::DoNotOptimize(nvi::sweep(base, {0.1, 1.0, 10.0}, starts, mode(state)));
    }
    std::filesystem::remove_all(base.output);
}

}  // namespace

BENCHMARK(BM_MonotoneRatios)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})->ArgNames({"n", "parallel"});
BENCHMARK(BM_ContractionCheck)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})->ArgNames({"n", "parallel"});
BENCHMARK(BM_Sweep)->ArgsProduct({{15}, {0, 1}})->ArgNames({"runs", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
