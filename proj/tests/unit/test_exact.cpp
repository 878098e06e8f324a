#include <gtest/gtest.h>

#include <cmath>

#include "cyberlab/exact.hpp"
#include "cyberlab/generators.hpp"
#include "cyberlab/rng.hpp"
#include "oracles.hpp"

using namespace cyberlab;

TEST(StateCodes, RoundTrip) {
    const std::vector<NodeState> s{NodeState::recovered, NodeState::susceptible, NodeState::infected};
    EXPECT_EQ(encode_state(s), 2u + 0u * 3u + 1u * 9u);
    EXPECT_EQ(decode_state(encode_state(s), 3), s);
}

TEST(Generator, SingleNode) {
    const auto q = exact_generator(Graph::empty(1), SirParams::homogeneous(1, 0.1, 2.0));
    ASSERT_EQ(q.state_count(), 3u);
    EXPECT_DOUBLE_EQ(q.rate(1, 2), 2.0);
    EXPECT_DOUBLE_EQ(q.rate(1, 1), -2.0);
    for (StateCode s : {0u, 2u}) {
        EXPECT_TRUE(q.off_diagonal(s).empty());
        EXPECT_EQ(q.diagonal(s), 0.0);
    }
}

TEST(Generator, TwoNodeLine) {
    const auto q = exact_generator(path_graph(2), SirParams{0.1, {0.1, 0.3}});
    const StateCode si = encode_state(std::vector{NodeState::susceptible, NodeState::infected});
    const StateCode ii = encode_state(std::vector{NodeState::infected, NodeState::infected});
    const StateCode sr = encode_state(std::vector{NodeState::susceptible, NodeState::recovered});
    EXPECT_DOUBLE_EQ(q.rate(si, ii), 0.1);
    EXPECT_DOUBLE_EQ(q.rate(si, sr), 0.3);
    EXPECT_DOUBLE_EQ(q.rate(si, si), -0.4);
}

TEST(Generator, RowsSumToZeroAndChangeOneNode) {
    const Graph g = fixture(Fixture::tree8);
    const auto q = exact_generator(g, SirParams{0.3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}});
    EXPECT_EQ(q.state_count(), 6561u);
    for (StateCode s = 0; s < q.state_count(); ++s) {
        double sum = q.diagonal(s);
        const auto from = decode_state(s, 8);
        bool any_infected = false;
        for (auto st : from) any_infected |= st == NodeState::infected;
        if (!any_infected) EXPECT_TRUE(q.off_diagonal(s).empty());
        for (const auto& e : q.off_diagonal(s)) {
            sum += e.rate;
            const auto to = decode_state(e.to, 8);
            int changed = 0;
            for (std::size_t i = 0; i < 8; ++i) changed += from[i] != to[i];
            EXPECT_EQ(changed, 1);
        }
        EXPECT_NEAR(sum, 0.0, 1e-12);
    }
    EXPECT_THROW((void)exact_generator(complete_graph(11), SirParams::homogeneous(11, 0.1, 1.0)), std::length_error);
}

TEST(ExactProbabilities, TwoNodeClosedForm) {
    const auto params = SirParams::homogeneous(2, 0.1, 0.1);
    const auto p = exact_infection_probabilities(path_graph(2), params, InitialCondition::uniform());
    EXPECT_DOUBLE_EQ(p[0], 0.75);
    EXPECT_DOUBLE_EQ(p[1], 0.75);
    EXPECT_DOUBLE_EQ(exact_infection_probability(fixture(Fixture::tree8), SirParams::homogeneous(8, 0.4, 0.2),
                                                 InitialCondition::node(5), 5),
                     1.0);
}

TEST(ExactProbabilities, TreeWithSlowRecovery) {
    const auto p = exact_infection_probabilities(fixture(Fixture::tree8), SirParams::homogeneous(8, 0.1, 0.1),
                                                 InitialCondition::uniform());
    const std::vector<double> expected{0.3125, 0.4375, 0.40625, 0.40625, 0.296875, 0.296875, 0.296875, 0.296875};
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(p[i], expected[i], 1e-12) << "node " << i;
}

TEST(ExactProbabilities, MatchIndependentChainSolver) {
    Rng rng = make_rng(Seed{31});
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const Graph g = erdos_renyi(n, 0.5, derive_seed(Seed{31}, trial));
        std::vector<double> gamma(n);
        for (auto& x : gamma) x = 0.1 + uniform01(rng);
        const double tau = 0.05 + uniform01(rng);
        const auto ref = oracle::solve_sir_uniform(g, tau, gamma);
        const auto p = exact_infection_probabilities(g, SirParams{tau, gamma}, InitialCondition::uniform());
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(p[i], ref.infection_probability[i], 1e-10);
        for (NodeId i = 0; i < n; ++i) {
            EXPECT_NEAR(expected_infected_time(g, SirParams{tau, gamma}, InitialCondition::uniform(), i,
                                               ProbabilityEstimator::exact()),
                        ref.infected_time[i], 1e-9);
        }
    }
}

TEST(ExactProbabilities, IndependentOfOwnRecoveryRate) {
    const Graph g = fixture(Fixture::tree8);
    SirParams params = SirParams::homogeneous(8, 0.1, 0.1);
    const double base = exact_infection_probability(g, params, InitialCondition::uniform(), 2);
    for (double own : {0.01, 0.5, 3.0}) {
        params.gamma[2] = own;
        EXPECT_NEAR(exact_infection_probability(g, params, InitialCondition::uniform(), 2), base, 1e-12);
    }
}

TEST(ExpectedInfectedTime, Examples) {
    const auto two = SirParams::homogeneous(2, 0.1, 0.1);
    EXPECT_DOUBLE_EQ(expected_infected_time(path_graph(2), two, InitialCondition::uniform(), 0,
                                            ProbabilityEstimator::exact()),
                     7.5);
    EXPECT_DOUBLE_EQ(expected_infected_time(fixture(Fixture::star8), SirParams::homogeneous(8, 0.3, 0.25),
                                            InitialCondition::node(0), 0, ProbabilityEstimator::exact()),
                     4.0);
    EXPECT_NEAR(expected_infected_time(fixture(Fixture::star8), SirParams::homogeneous(8, 0.0, 0.5),
                                       InitialCondition::uniform(), 3, ProbabilityEstimator::exact()),
                1.0 / (8 * 0.5), 1e-12);
}

TEST(ExactProbabilities, SampledEstimatorAgrees) {
    const Graph g = fixture(Fixture::tree8);
    const auto params = SirParams::homogeneous(8, 0.1, 0.1);
    const auto exact = infection_probabilities(g, params, InitialCondition::uniform(), ProbabilityEstimator::exact());
    const std::uint64_t runs = 200'000;
    const auto mc = infection_probabilities(g, params, InitialCondition::uniform(),
                                            ProbabilityEstimator::sampled(runs, Seed{4}, 2));
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(mc[i], exact[i], 4 * std::sqrt(exact[i] * (1 - exact[i]) / runs));
    EXPECT_NEAR(mc[2], 0.406, 0.005);
}
