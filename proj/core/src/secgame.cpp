#include "cyberlab/secgame.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace cyberlab {

void GameConfig::validate() const {
    if (!(k > 0.0)) throw std::invalid_argument("game: k must be > 0");
    if (!(tau >= 0.0)) throw std::invalid_argument("game: tau must be >= 0");
    if (rounds < 1) throw std::invalid_argument("game: rounds must be >= 1");
    if (estimator.mode == ProbabilityEstimator::Mode::monte_carlo && estimator.runs < 1) {
        throw std::invalid_argument("game: runs per round must be >= 1");
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("game: tolerance must be > 0");
}

double cost(double gamma, double k) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("cost: gamma must be >= 0");
    if (!(k > 0.0)) throw std::invalid_argument("cost: k must be > 0");
    return std::expm1(k * gamma);
}

double loss(double p_infect, double gamma) {
    if (!(p_infect >= 0.0 && p_infect <= 1.0)) throw std::invalid_argument("loss: probability outside [0, 1]");
    if (!(gamma > 0.0)) throw std::invalid_argument("loss: gamma must be > 0");
    return p_infect / gamma;
}

namespace {

/// First-order condition k exp(k x) x^2 - target, increasing in x >= 0.
double marginal_gap(double x, double k, double target) { return k * std::exp(k * x) * x * x - target; }

/// Root of marginal_gap on [lo, hi] by bisection down to the last ulp.
double bisect(double lo, double hi, double k, double target) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (marginal_gap(mid, k, target) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double bracket_upper(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("k must be > 0");
    return 1.0 / std::sqrt(k);
}

double bracket_lower(std::size_t n, double k) {
    if (n < 1) throw std::invalid_argument("bracket_lower: n must be >= 1");
    return bisect(0.0, bracket_upper(k), k, 1.0 / (2.0 * static_cast<double>(n)));
}

double best_response(double p_infect, double k, std::size_t n) {
    if (!(p_infect > 0.0)) throw std::invalid_argument("best_response: infection probability must be > 0");
    if (p_infect > 1.0) throw std::invalid_argument("best_response: infection probability above 1");
    const double lo = bracket_lower(n, k);
    const double hi = bracket_upper(k);
    // Sampled probabilities can fall below 1/(2N); the minimizer is then
    // below the bracket and the bracket end is returned.
    if (marginal_gap(lo, k, p_infect) >= 0.0) return lo;
    return bisect(lo, hi, k, p_infect);
}

std::vector<double> estimate_probabilities(const Graph& g, const SecurityProfile& profile, double tau,
                                           const ProbabilityEstimator& estimator) {
    const SirParams params{tau, profile.gamma};
    return infection_probabilities(g, params, InitialCondition::uniform(), estimator);
}

ExpenseReport expense_report(const SecurityProfile& profile, const std::vector<double>& probability, double k) {
    const std::size_t n = profile.size();
    ExpenseReport r;
    r.probability = probability;
    r.cost.resize(n);
    r.loss.resize(n);
    r.expense.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.cost[i] = cost(profile[i], k);
        r.loss[i] = loss(probability[i], profile[i]);
        r.expense[i] = r.cost[i] + r.loss[i];
        r.total += r.expense[i];
    }
    return r;
}

ExpenseReport accumulated_expenses(const Graph& g, const SecurityProfile& profile, const GameConfig& config) {
    config.validate();
    return expense_report(profile, estimate_probabilities(g, profile, config.tau, config.estimator), config.k);
}

SecurityProfile play_round(const Graph& g, const SecurityProfile& profile, const GameConfig& config) {
    config.validate();
    const std::size_t n = g.node_count();
    if (profile.size() != n) throw std::invalid_argument("play_round: profile size differs from node count");
    SecurityProfile next = profile;
    if (!config.sequential) {
        const auto p = estimate_probabilities(g, profile, config.tau, config.estimator);
        for (std::size_t i = 0; i < n; ++i) next.gamma[i] = best_response(p[i], config.k, n);
        return next;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = estimate_probabilities(g, next, config.tau, config.estimator);
        next.gamma[i] = best_response(p[i], config.k, n);
    }
    return next;
}

GameResult run_game(const Graph& g, const SecurityProfile& initial, const GameConfig& config) {
    config.validate();
    const std::size_t n = g.node_count();
    if (initial.size() != n) throw std::invalid_argument("run_game: profile size differs from node count");

    GameResult result;
    SecurityProfile current = initial;
    for (std::size_t r = 0; r < config.rounds; ++r) {
        RoundRecord rec;
        rec.round = r;
        rec.profile = current;
        SecurityProfile next;
        if (config.sequential) {
            rec.report = accumulated_expenses(g, current, config);
            next = play_round(g, current, config);
        } else {
            const auto p = estimate_probabilities(g, current, config.tau, config.estimator);
            rec.report = expense_report(current, p, config.k);
            next = current;
            for (std::size_t i = 0; i < n; ++i) next.gamma[i] = best_response(p[i], config.k, n);
        }
        for (std::size_t i = 0; i < n; ++i) rec.step = std::max(rec.step, std::abs(next[i] - current[i]));
        const bool done = rec.step < config.tolerance;
        result.history.push_back(std::move(rec));
        current = std::move(next);
        result.rounds_played = r + 1;
        if (done) {
            result.converged = true;
            break;
        }
    }
    result.final_report = accumulated_expenses(g, current, config);
    result.final_profile = std::move(current);
    return result;
}

TwoNodeValues two_node_oracle(double tau, double gamma1, double gamma2) {
    if (!(tau >= 0.0) || !(gamma1 > 0.0) || !(gamma2 > 0.0)) {
        throw std::invalid_argument("two_node_oracle: rates must be positive");
    }
    TwoNodeValues v;
    v.p1 = 0.5 * (1.0 + tau / (gamma2 + tau));
    v.p2 = 0.5 * (1.0 + tau / (gamma1 + tau));
    v.loss1 = v.p1 / gamma1;
    v.loss2 = v.p2 / gamma2;
    return v;
}

std::pair<double, double> two_node_social_optimum(double tau, double k) {
    auto total = [&](double a, double b) {
        const auto v = two_node_oracle(tau, a, b);
        return std::expm1(k * a) + std::expm1(k * b) + v.loss1 + v.loss2;
    };
    const double hi = 2.0 * bracket_upper(k);
    double best_a = hi / 2;
    double best_b = hi / 2;
    double best = total(best_a, best_b);
    constexpr int kGrid = 400;
    for (int i = 1; i <= kGrid; ++i) {
        for (int j = 1; j <= kGrid; ++j) {
            const double a = hi * i / kGrid;
            const double b = hi * j / kGrid;
            const double v = total(a, b);
            if (v < best) {
                best = v;
                best_a = a;
                best_b = b;
            }
        }
    }
    // Compass search around the grid optimum.
    for (double step = hi / kGrid; step > 1e-12; step *= 0.5) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (auto [da, db] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
                const double a = best_a + da * step;
                const double b = best_b + db * step;
                if (a <= 0.0 || b <= 0.0) continue;
                const double v = total(a, b);
                if (v < best) {
                    best = v;
                    best_a = a;
                    best_b = b;
                    moved = true;
                }
            }
        }
    }
    return {best_a, best_b};
}

CentralityVector investment_centrality(const SecurityProfile& profile) {
    for (double g : profile.gamma) {
        if (!(g > 0.0)) throw std::invalid_argument("investment centrality needs positive security levels");
    }
    return CentralityVector{CentralityKind::investment, profile.gamma};
}

void write_game_history_csv(std::ostream& out, const GameResult& result) {
    out << "round,node,gamma,P_hat,cost,loss,expense\n";
    auto rows = [&](std::size_t round, const SecurityProfile& p, const ExpenseReport& r) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            out << round << ',' << i << ',' << p[i] << ',' << r.probability[i] << ',' << r.cost[i] << ','
                << r.loss[i] << ',' << r.expense[i] << '\n';
        }
    };
    for (const auto& rec : result.history) rows(rec.round, rec.profile, rec.report);
    rows(result.rounds_played, result.final_profile, result.final_report);
}

void write_game_summary_json(std::ostream& out, const GameResult& result, Seed seed, std::uint64_t runs) {
    nlohmann::json j;
    j["seed"] = seed.value;
    j["runs"] = runs;
    j["converged"] = result.converged;
    j["rounds_played"] = result.rounds_played;
    nlohmann::json per_round = nlohmann::json::array();
    for (const auto& rec : result.history) {
        per_round.push_back({{"round", rec.round}, {"total_expense", rec.report.total}, {"step", rec.step}});
    }
    j["rounds"] = per_round;
    j["final_total_expense"] = result.final_report.total;
    j["final_gamma"] = result.final_profile.gamma;
    out << j.dump(2) << '\n';
}

}  // namespace cyberlab
