#include <benchmark/benchmark.h>

#include "cachenet/analysis.hpp"
#include "cachenet/catalog.hpp"
#include "cachenet/optimizer.hpp"
#include "cachenet/phy.hpp"
#include "cachenet/simulator.hpp"

using namespace cachenet;

namespace {

ScenarioParams reference_scenario() {
    ScenarioParams p;
    p.arrival_rate = 0.2;
    p.tx_prob = 0.9;
    p.external_request_prob = 0.8647193064031946;
    p.helper_assist_prob = 0.5;
    p.helper_hit_prob = 0.30791204154846313;
    p.dc_availability = 0.7;
    p.links = build_link_probabilities(NetworkGeometry{});
    return p;
}

void BM_Analyze(benchmark::State& state) {
    ScenarioParams p = reference_scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze(p, 0.5));
    }
}
BENCHMARK(BM_Analyze);

void BM_ZipfNormalization(benchmark::State& state) {
    for (auto _ : state) {
        ZipfCatalog catalog(static_cast<std::size_t>(state.range(0)), 0.5);
        benchmark::DoNotOptimize(catalog.prefix_mass(200));
    }
}
BENCHMARK(BM_ZipfNormalization)->Arg(10000)->Arg(100000);

void BM_GridOracle(benchmark::State& state) {
    ScenarioParams p = reference_scenario();
    OptimizerInputs in{p.arrival_rate, p.external_request_prob, p.helper_hit_prob,
                       p.dc_availability, p.links};
    double step = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grid_oracle(in, 0.5, Regime::unstable, step));
    }
}
BENCHMARK(BM_GridOracle)->Arg(50)->Arg(200);

void BM_SimulateSlots(benchmark::State& state) {
    SimConfig config;
    config.params = reference_scenario();
    config.num_slots = static_cast<std::uint64_t>(state.range(0));
    config.warmup_slots = 0;
    config.num_replications = 1;
    config.request_model =
        state.range(1) == 0 ? RequestModel::memoryless : RequestModel::persistent;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        config.seed = seed++;
        benchmark::DoNotOptimize(simulate(config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
// replications run on worker threads, so wall time is the honest measure
BENCHMARK(BM_SimulateSlots)->Args({100000, 0})->Args({100000, 1})->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
