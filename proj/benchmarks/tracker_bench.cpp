#include <random>

#include <benchmark/benchmark.h>

#include "resetmon/graph_analysis.hpp"
#include "resetmon/harness.hpp"
#include "resetmon/models.hpp"
#include "resetmon/tracker.hpp"

namespace {

using namespace resetmon;

std::vector<StateId> random_walk(const ProductChain& product, std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<StateId> walk;
    walk.reserve(length);
    StateId s = product.initial().front().target;
    walk.push_back(s);
    while (walk.size() < length) {
        const auto succ = product.successors(s);
        s = succ[rng() % succ.size()].target;
        walk.push_back(s);
    }
    return walk;
}

void BM_TrackerStep(benchmark::State& state) {
    RandomChainOptions options;
    options.forward_bias = 0.0;
    const auto chain = gen_random(static_cast<std::size_t>(state.range(0)), 7, options);
    const auto product = build_product(chain, builtin_dra("GFp"));
    const auto walk = random_walk(product, 1'000'000, 11);
    CandidateTracker tracker(product);
    for (auto _ : state) {
        tracker.reset();
        for (StateId s : walk) tracker.step(s);
        benchmark::DoNotOptimize(tracker.strength());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * walk.size()));
}
BENCHMARK(BM_TrackerStep)->Arg(1000)->Arg(5000)->Arg(10600)->Unit(benchmark::kMillisecond);

void BM_Fig2BoldTrials(benchmark::State& state) {
    const auto product = build_product(gen_fig2(static_cast<std::size_t>(state.range(0))), builtin_dra("Fp"));
    ExperimentConfig config;
    config.monitor = MonitorConfig::bold(1.0, 0.5);
    config.trials = 200;
    for (auto _ : state) {
        auto report = run_trials(product, config);
        benchmark::DoNotOptimize(report.aggregates.mean_steps);
    }
}
BENCHMARK(BM_Fig2BoldTrials)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
