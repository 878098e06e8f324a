#include <benchmark/benchmark.h>

#include "cyberlab/epidemic.hpp"
#include "cyberlab/exact.hpp"
#include "cyberlab/generators.hpp"

using namespace cyberlab;

// Full outbreaks on BA(1000, 5): supercritical, so most runs are large.
static void BM_GillespieRun(benchmark::State& state) {
    const Graph g = barabasi_albert(1000, 5, Seed{1});
    const auto params = SirParams::homogeneous(1000, 0.1, 1.0);
    SirSimulator sim(g, params);
    std::uint64_t r = 0;
    std::size_t infected = 0;
    for (auto _ : state) {
        Rng rng = make_rng(Seed{2}, r++);
        sim.run(rng, InitialCondition::uniform());
        infected += sim.final_size();
    }
    state.counters["infected/run"] = benchmark::Counter(static_cast<double>(infected) / static_cast<double>(r));
}
BENCHMARK(BM_GillespieRun)->Unit(benchmark::kMicrosecond);

static void BM_PandemicCheck(benchmark::State& state) {
    const Graph g = erdos_renyi(1000, 0.01, Seed{1});
    const auto params = SirParams::homogeneous(1000, 0.1, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(check_pandemic(g, params, {}, 1000, Seed{3}));
}
BENCHMARK(BM_PandemicCheck)->Unit(benchmark::kMillisecond);

static void BM_ExactProbabilities(benchmark::State& state) {
    const Graph g = fixture(Fixture::tree8);
    const auto params = SirParams::homogeneous(8, 0.1, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(exact_infection_probabilities(g, params, InitialCondition::uniform()));
}
BENCHMARK(BM_ExactProbabilities)->Unit(benchmark::kMillisecond);
