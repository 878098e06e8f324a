#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cyberlab/allocate.hpp"
#include "cyberlab/centrality.hpp"
#include "cyberlab/epidemic.hpp"
#include "cyberlab/generators.hpp"
#include "cyberlab/risk_allocation.hpp"
#include "cyberlab/secgame.hpp"
#include "cyberlab/topoctl.hpp"
#include "oracles.hpp"

using namespace cyberlab;

namespace {

Graph graph_from_mask(std::size_t n, std::uint32_t mask) {
    std::vector<Edge> edges;
    std::uint32_t bit = 0;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j, ++bit) {
            if (mask & (1u << bit)) edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

std::vector<double> random_vector(Rng& rng, std::size_t n, double zero_share = 0.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform01(rng) < zero_share ? 0.0 : 10.0 * uniform01(rng);
    v[0] += 1.0;
    return v;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST(CentralityEquivalence, EveryGraphUpToSevenNodes) {
    std::uint64_t checked = 0;
    for (std::size_t n = 1; n <= 7; ++n) {
        const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
        const std::uint32_t total = 1u << pairs;
        std::uint64_t mismatches = 0;
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            const Graph g = graph_from_mask(n, mask);
            const auto ref = oracle::brute_betweenness(g);
            const auto node = betweenness_centrality(g);
            const auto edge = edge_betweenness(g);
            for (NodeId i = 0; i < n; ++i) mismatches += std::abs(node[i] - ref.node[i]) > 1e-9;
            for (std::size_t e = 0; e < edge.edges.size(); ++e) {
                const auto key = std::make_pair(static_cast<int>(edge.edges[e].u), static_cast<int>(edge.edges[e].v));
                mismatches += std::abs(edge.values[e] - ref.edge.at(key)) > 1e-9;
            }
            const auto deg = degree_centrality(g);
            for (NodeId i = 0; i < n; ++i) mismatches += deg[i] != static_cast<double>(g.degree(i));
            ++checked;
        }
        EXPECT_EQ(mismatches, 0u) << "n = " << n;
    }
    EXPECT_EQ(checked, 1u + 2u + 8u + 64u + 1024u + 32768u + 2097152u);
}

TEST(BudgetConservation, AllStrategies) {
    Rng rng = make_rng(Seed{101});
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + trial % 60;
        const double beta = 0.1 + 20.0 * uniform01(rng);
        const auto c = random_vector(rng, n, 0.3);
        EXPECT_NEAR(sum(untargeted(beta, n)), beta, 1e-9 * beta);
        EXPECT_NEAR(sum(upper(beta, c)), beta, 1e-9 * beta);
        EXPECT_NEAR(sum(lower(beta, c)), beta, 1e-9 * beta);
        const double p = 0.01 + 0.99 * uniform01(rng);
        EXPECT_NEAR(sum(centralized_upper(beta, c, p)), beta, 1e-9 * beta);
        for (double x : lower(beta, c)) EXPECT_GE(x, 0.0);
    }
}

TEST(ContactCoefficientNormalization, EdgesAndSplitSets) {
    Rng rng = make_rng(Seed{102});
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = erdos_renyi(40, 0.15, derive_seed(Seed{102}, trial));
        if (g.edge_count() == 0) continue;
        std::vector<Edge> removed;
        for (const auto& e : g.edges()) {
            if (uniform01(rng) < 0.2) removed.push_back(e);
        }
        if (removed.empty()) removed.push_back(g.edges()[0]);
        const auto cc = contact_coefficients_edges(g.node_count(), removed);
        EXPECT_NEAR(sum(cc.c), 1.0, 1e-12);
        for (NodeId i = 0; i < g.node_count(); ++i) {
            const bool touched = std::any_of(removed.begin(), removed.end(), [&](const Edge& e) { return e.u == i || e.v == i; });
            EXPECT_EQ(cc.c[i] > 0.0, touched);
        }

        const auto centrality = random_vector(rng, 40);
        std::vector<NodeId> split_set{0};
        for (NodeId i = 1; i < 40; ++i) {
            if (uniform01(rng) < 0.2) split_set.push_back(i);
        }
        const auto cs = contact_coefficients_splits(split_set, centrality);
        EXPECT_NEAR(sum(cs.c), 1.0, 1e-12);
    }
}

TEST(SurchargePoolConservation, PoolIsDistributedExactly) {
    Rng rng = make_rng(Seed{103});
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + trial % 50;
        const auto base = random_vector(rng, n);
        const auto c = allocation_weights(random_vector(rng, n, 0.5));
        const double pool = 1000.0 * uniform01(rng);
        const auto s = surcharge(base, c, pool);
        EXPECT_NEAR(sum(s) - sum(base), pool, 1e-9 * (1.0 + pool));
        for (std::size_t i = 0; i < n; ++i) EXPECT_GE(s[i], base[i]);
    }
}

TEST(SplitDegreeConservation, BothRules) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const Graph g = s % 2 ? barabasi_albert(60, 3, Seed{s}) : erdos_renyi(60, 0.1, Seed{s});
        const auto bet = betweenness_centrality(g);
        for (NodeId i = 0; i < g.node_count(); i += 7) {
            if (g.degree(i) == 0) continue;
            for (int variant = 0; variant < 3; ++variant) {
                const Graph h = variant == 0   ? split_node(g, i, CentralityKind::degree)
                                : variant == 1 ? split_node(g, i, bet)
                                               : split_node_modified(g, i);
                const NodeId fresh = static_cast<NodeId>(g.node_count());
                ASSERT_EQ(h.node_count(), g.node_count() + 1);
                EXPECT_EQ(h.edge_count(), g.edge_count());
                EXPECT_EQ(h.degree(i) + h.degree(fresh), g.degree(i));
                EXPECT_GE(h.degree(i), h.degree(fresh));
                EXPECT_FALSE(h.has_edge(i, fresh));
                for (NodeId j = 0; j < g.node_count(); ++j) {
                    if (j != i) EXPECT_EQ(h.degree(j), g.degree(j));
                }
            }
        }
    }
}

TEST(ThreadDeterminism, EnsemblesCentralitiesAndChecks) {
    const Graph g = barabasi_albert(400, 4, Seed{104});
    const auto params = SirParams::homogeneous(400, 0.15, 1.0);
    for (unsigned threads : {2u, 3u, 8u}) {
        EXPECT_EQ(betweenness_centrality(g, 1).values, betweenness_centrality(g, threads).values);
        EXPECT_EQ(edge_betweenness(g, 1).values, edge_betweenness(g, threads).values);
        const auto a = monte_carlo(g, params, InitialCondition::uniform(), 3000, Seed{5}, 1);
        const auto b = monte_carlo(g, params, InitialCondition::uniform(), 3000, Seed{5}, threads);
        EXPECT_EQ(a.infection_count, b.infection_count);
        EXPECT_EQ(a.mean_infected_time, b.mean_infected_time);
        EXPECT_EQ(a.size_histogram, b.size_histogram);
        const auto ca = check_pandemic(g, params, PandemicCriterion{}, 3000, Seed{6}, 1);
        const auto cb = check_pandemic(g, params, PandemicCriterion{}, 3000, Seed{6}, threads);
        EXPECT_EQ(ca.pandemic_runs, cb.pandemic_runs);
        EXPECT_EQ(ca.runs_evaluated, cb.runs_evaluated);
        const auto la = paired_outbreak_losses(g, params, g, params, 2000, Seed{7}, 1);
        const auto lb = paired_outbreak_losses(g, params, g, params, 2000, Seed{7}, threads);
        EXPECT_EQ(la.before, lb.before);
        auto make = [](Rng& rng) { return erdos_renyi(100, 0.05, Seed{rng()}); };
        EXPECT_EQ(outbreak_sizes_resampled(make, SirParams::homogeneous(100, 0.3, 1.0), 600, Seed{8}, 1),
                  outbreak_sizes_resampled(make, SirParams::homogeneous(100, 0.3, 1.0), 600, Seed{8}, threads));
    }
}

TEST(ThreadDeterminism, SampledGame) {
    const Graph g = erdos_renyi(20, 0.2, Seed{105});
    GameConfig cfg;
    cfg.rounds = 4;
    cfg.estimator = ProbabilityEstimator::sampled(5000, Seed{9}, 1);
    const auto a = run_game(g, SecurityProfile::uniform(20, 0.1), cfg);
    cfg.estimator.threads = 4;
    const auto b = run_game(g, SecurityProfile::uniform(20, 0.1), cfg);
    EXPECT_EQ(a.final_profile.gamma, b.final_profile.gamma);
    EXPECT_EQ(a.final_report.total, b.final_report.total);
}
