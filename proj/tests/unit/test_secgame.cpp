#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cyberlab/generators.hpp"
#include "cyberlab/secgame.hpp"

using namespace cyberlab;

namespace {

constexpr double kK = 1.0 / 3.0;

GameConfig exact_config(double tau = 0.1) {
    GameConfig cfg;
    cfg.tau = tau;
    cfg.estimator = ProbabilityEstimator::exact();
    cfg.tolerance = GameConfig::default_tolerance(cfg.estimator);
    return cfg;
}

}  // namespace

TEST(CostAndLoss, Values) {
    EXPECT_EQ(cost(0.0, kK), 0.0);
    EXPECT_NEAR(cost(3.0, kK), 1.718281828459045, 1e-14);
    EXPECT_NEAR(cost(1.068, kK), 0.427607548263845, 1e-14);
    EXPECT_DOUBLE_EQ(loss(0.75, 0.1), 7.5);
    EXPECT_EQ(loss(0.0, 0.4), 0.0);
    EXPECT_DOUBLE_EQ(loss(1.0, 2.0), 0.5);
}

TEST(BestResponse, SolvesFirstOrderCondition) {
    // roots of k exp(k g) g^2 = p, 50-digit reference values
    EXPECT_NEAR(best_response(0.75, kK, 2), 1.22333012821344, 1e-9);
    EXPECT_NEAR(best_response(0.5377814719661478, kK, 2), 1.06380654869113, 1e-9);
    EXPECT_NEAR(best_response(0.406, kK, 8), 0.943103837614, 1e-9);
    EXPECT_NEAR(best_response(13.0 / 32.0, kK, 8), 0.943354712574, 1e-9);
    EXPECT_NEAR(best_response(1.0, kK, 1), 1.37688680261085, 1e-9);
    for (double p : {0.01, 0.2, 0.5, 0.9}) {
        const double g = best_response(p, kK, 50);
        EXPECT_NEAR(kK * std::exp(kK * g) * g * g, p, 1e-10);
    }
    EXPECT_THROW((void)best_response(0.0, kK, 2), std::invalid_argument);
    EXPECT_THROW((void)best_response(1.5, kK, 2), std::invalid_argument);
}

TEST(BestResponse, BracketEnds) {
    EXPECT_NEAR(bracket_lower(2, kK), 0.762654532828, 1e-9);
    EXPECT_NEAR(bracket_lower(8, kK), 0.404764839635, 1e-9);
    EXPECT_NEAR(bracket_lower(50, kK), 0.168411067160, 1e-9);
    EXPECT_DOUBLE_EQ(bracket_upper(kK), std::sqrt(3.0));
}

TEST(TwoNodeOracle, ClosedForm) {
    const auto v = two_node_oracle(0.1, 0.1, 0.1);
    EXPECT_DOUBLE_EQ(v.loss1, 7.5);
    EXPECT_DOUBLE_EQ(v.loss2, 7.5);
    EXPECT_DOUBLE_EQ(v.p1, 0.75);
    const auto quiet = two_node_oracle(0.0, 0.5, 2.0);
    EXPECT_DOUBLE_EQ(quiet.p1, 0.5);
    EXPECT_DOUBLE_EQ(quiet.loss1, 1.0);
    EXPECT_DOUBLE_EQ(quiet.loss2, 0.25);
    EXPECT_NEAR(two_node_oracle(0.1, 0.3, 1e9).p1, 0.5, 1e-9);
}

TEST(PlayRound, TwoNodeRoundsFromSlowRecovery) {
    const Graph g = path_graph(2);
    const auto cfg = exact_config();
    const auto r1 = play_round(g, SecurityProfile::uniform(2, 0.1), cfg);
    EXPECT_NEAR(r1[0], 1.223330128, 1e-8);
    EXPECT_NEAR(r1[1], 1.223330128, 1e-8);
    const auto r2 = play_round(g, r1, cfg);
    EXPECT_NEAR(r2[0], 1.063808225, 1e-8);
}

TEST(PlayRound, NoTransmissionIsSymmetric) {
    const Graph g = fixture(Fixture::tree8);
    const auto next = play_round(g, SecurityProfile{{0.2, 0.5, 0.3, 0.9, 0.1, 0.4, 0.6, 0.8}}, exact_config(0.0));
    for (std::size_t i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(next[i], best_response(0.125, kK, 8));
}

TEST(RunGame, TwoNodeConvergesToSteadyState) {
    const auto result = run_game(path_graph(2), SecurityProfile::uniform(2, 0.1), exact_config());
    const std::vector<double> rounds{0.1, 1.223330128, 1.063808225, 1.068145798, 1.068012582};
    ASSERT_TRUE(result.converged);
    ASSERT_EQ(result.history.size(), rounds.size());
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        EXPECT_NEAR(result.history[r].profile[0], rounds[r], 1e-8);
        EXPECT_NEAR(result.history[r].profile[1], rounds[r], 1e-8);
    }
    EXPECT_NEAR(result.final_profile[0], 1.068016659, 1e-8);
    EXPECT_NEAR(result.final_report.total, 1.871708753914542, 1e-6);
}

TEST(RunGame, IsolatedNodeNeedsOneRound) {
    auto cfg = exact_config();
    const auto result = run_game(Graph::empty(1), SecurityProfile::uniform(1, 0.7), cfg);
    EXPECT_NEAR(result.final_profile[0], 1.37688680261085, 1e-9);
    EXPECT_LE(result.rounds_played, 2u);
    EXPECT_TRUE(result.converged);
}

TEST(RunGame, SequentialUpdatesReachTheSameSteadyState) {
    auto cfg = exact_config();
    cfg.sequential = true;
    const auto result = run_game(path_graph(2), SecurityProfile::uniform(2, 0.1), cfg);
    ASSERT_TRUE(result.converged);
    EXPECT_NEAR(result.final_profile[0], 1.068016, 1e-4);
    EXPECT_NEAR(result.final_profile[1], 1.068016, 1e-4);
}

TEST(RunGame, SampledModeIsDeterministic) {
    GameConfig cfg;
    cfg.estimator = ProbabilityEstimator::sampled(20'000, Seed{5});
    cfg.rounds = 6;
    const Graph g = fixture(Fixture::tree8);
    const auto a = run_game(g, SecurityProfile::uniform(8, 0.1), cfg);
    cfg.estimator.threads = 3;
    const auto b = run_game(g, SecurityProfile::uniform(8, 0.1), cfg);
    EXPECT_EQ(a.final_profile.gamma, b.final_profile.gamma);
}

TEST(Expenses, TwoNodeSteadyState) {
    const auto report = accumulated_expenses(path_graph(2), SecurityProfile::uniform(2, 1.068016534), exact_config());
    EXPECT_NEAR(report.total, 1.871708753914542, 1e-6);
    EXPECT_NEAR(report.expense[0], report.cost[0] + report.loss[0], 1e-15);
}

TEST(Expenses, NoTransmission) {
    const SecurityProfile prof{{0.5, 1.0, 2.0}};
    const auto report = accumulated_expenses(Graph(3, {{0, 1}, {1, 2}}), prof, exact_config(0.0));
    double expected = 0.0;
    for (double g : prof.gamma) expected += cost(g, kK) + 1.0 / (3.0 * g);
    EXPECT_NEAR(report.total, expected, 1e-12);
}

TEST(SocialOptimum, BeatsTheSteadyState) {
    const auto [a, b] = two_node_social_optimum(0.1, kK);
    const auto v = two_node_oracle(0.1, a, b);
    const double social = cost(a, kK) + cost(b, kK) + v.loss1 + v.loss2;
    EXPECT_LT(social, 1.871708753914542);
    EXPECT_NEAR(a, b, 1e-6);
    EXPECT_GT(a, 1.068016534);
}

TEST(InvestmentCentrality, CopiesTheProfile) {
    const auto c = investment_centrality(SecurityProfile::uniform(2, 1.068));
    EXPECT_EQ(c.kind, CentralityKind::investment);
    EXPECT_EQ(c.values, (std::vector<double>{1.068, 1.068}));
}

TEST(GameOutput, HistoryCsvHeader) {
    const auto result = run_game(path_graph(2), SecurityProfile::uniform(2, 0.1), exact_config());
    std::ostringstream out;
    write_game_history_csv(out, result);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "round,node,gamma,P_hat,cost,loss,expense");
}
