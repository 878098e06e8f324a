#include <benchmark/benchmark.h>

#include "cyberlab/centrality.hpp"
#include "cyberlab/generators.hpp"
#include "cyberlab/paths.hpp"

using namespace cyberlab;

static void BM_Betweenness(benchmark::State& state) {
    const Graph g = barabasi_albert(static_cast<std::size_t>(state.range(0)), 5, Seed{1});
    for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Betweenness)->Arg(125)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_EdgeBetweenness(benchmark::State& state) {
    const Graph g = barabasi_albert(static_cast<std::size_t>(state.range(0)), 5, Seed{1});
    for (auto _ : state) benchmark::DoNotOptimize(edge_betweenness(g));
}
BENCHMARK(BM_EdgeBetweenness)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_AverageShortestPath(benchmark::State& state) {
    const Graph g = barabasi_albert(1000, 5, Seed{1});
    for (auto _ : state) benchmark::DoNotOptimize(avg_shortest_path(g));
}
BENCHMARK(BM_AverageShortestPath)->Unit(benchmark::kMillisecond);

static void BM_ErdosRenyi(benchmark::State& state) {
    std::uint64_t s = 0;
    for (auto _ : state) benchmark::DoNotOptimize(erdos_renyi(1000, 0.01, Seed{++s}));
}
BENCHMARK(BM_ErdosRenyi)->Unit(benchmark::kMicrosecond);
