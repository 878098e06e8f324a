#pragma once

#include <iosfwd>
#include <vector>

#include "cyberlab/centrality.hpp"
#include "cyberlab/exact.hpp"
#include "cyberlab/graph.hpp"

namespace cyberlab {

/// Per-node security levels, i.e. recovery rates gamma_i > 0.
struct SecurityProfile {
    std::vector<double> gamma;

    static SecurityProfile uniform(std::size_t n, double level) { return {std::vector<double>(n, level)}; }
    [[nodiscard]] std::size_t size() const noexcept { return gamma.size(); }
    double operator[](std::size_t i) const { return gamma[i]; }
};

/// Per-node cost C_i, loss L_i and total E_i = C_i + L_i.
struct ExpenseReport {
    std::vector<double> probability;
    std::vector<double> cost;
    std::vector<double> loss;
    std::vector<double> expense;
    double total = 0.0;
};

struct GameConfig {
    double k = 1.0 / 3.0;
    double tau = 0.1;
    std::size_t rounds = 50;
    /// Probability source for every round. Monte-Carlo rounds reuse the same
    /// seed (common random numbers), so the round map is deterministic.
    ProbabilityEstimator estimator = ProbabilityEstimator::sampled(100'000, Seed{1});
    /// Sup-norm step below which the game counts as converged.
    double tolerance = 1e-3;
    /// Gauss-Seidel updates (node i sees the already-updated levels of j < i).
    bool sequential = false;

    void validate() const;
    /// Default tolerance for the estimator: 1e-4 exact, 1e-3 sampled.
    static double default_tolerance(const ProbabilityEstimator& e) {
        return e.mode == ProbabilityEstimator::Mode::exact ? 1e-4 : 1e-3;
    }
};

/// C(gamma) = exp(k gamma) - 1.
double cost(double gamma, double k);

/// L = p / gamma.
double loss(double p_infect, double gamma);

/// Lower end eps(N) of the best-response bracket: solves
/// k exp(k eps) eps^2 = 1 / (2N).
double bracket_lower(std::size_t n, double k);

/// Upper end 1 / sqrt(k) of the best-response bracket.
double bracket_upper(double k);

/// Minimizer of exp(k gamma) - 1 + p / gamma: the root of
/// k exp(k gamma) gamma^2 = p, by bisection on [eps(N), 1/sqrt(k)].
/// Throws std::invalid_argument for p <= 0 or p > 1.
double best_response(double p_infect, double k, std::size_t n);

/// One ensemble (or exact solve) of all P(A_i) at the given levels.
std::vector<double> estimate_probabilities(const Graph& g, const SecurityProfile& profile, double tau,
                                           const ProbabilityEstimator& estimator);

ExpenseReport expense_report(const SecurityProfile& profile, const std::vector<double>& probability, double k);

ExpenseReport accumulated_expenses(const Graph& g, const SecurityProfile& profile, const GameConfig& config);

/// Simultaneous best responses of all nodes to `profile`.
SecurityProfile play_round(const Graph& g, const SecurityProfile& profile, const GameConfig& config);

struct RoundRecord {
    std::size_t round = 0;
    SecurityProfile profile;  // gamma(round)
    ExpenseReport report;     // evaluated at gamma(round)
    double step = 0.0;        // sup-norm distance to gamma(round + 1)
};

struct GameResult {
    SecurityProfile final_profile;
    ExpenseReport final_report;
    std::vector<RoundRecord> history;
    bool converged = false;
    std::size_t rounds_played = 0;
};

/// Iterates rounds until the step drops below config.tolerance or
/// config.rounds rounds were played.
GameResult run_game(const Graph& g, const SecurityProfile& initial, const GameConfig& config);

struct TwoNodeValues {
    double loss1 = 0.0;
    double loss2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Closed form for the two-node line with a uniformly chosen seed node:
/// P(A_i) = (1 + tau / (gamma_j + tau)) / 2, L_i = P(A_i) / gamma_i.
TwoNodeValues two_node_oracle(double tau, double gamma1, double gamma2);

/// Symmetric-free minimizer of E_1 + E_2 on the two-node line (grid search
/// plus local refinement on the closed form).
std::pair<double, double> two_node_social_optimum(double tau, double k);

CentralityVector investment_centrality(const SecurityProfile& profile);

/// CSV `round,node,gamma,P_hat,cost,loss,expense`.
void write_game_history_csv(std::ostream& out, const GameResult& result);
/// JSON summary with the accumulated expenses per round and the convergence flag.
void write_game_summary_json(std::ostream& out, const GameResult& result, Seed seed, std::uint64_t runs);

}  // namespace cyberlab
