#include "cyberlab/exact.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace cyberlab {

namespace {

std::vector<StateCode> powers_of_three(std::size_t n) {
    std::vector<StateCode> pw(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) pw[i] = pw[i - 1] * 3;
    return pw;
}

void require_small(const Graph& g) {
    if (g.node_count() > kExactMaxNodes) {
        throw std::length_error("exact SIR solver limited to " + std::to_string(kExactMaxNodes) + " nodes, got " +
                                std::to_string(g.node_count()));
    }
}

inline unsigned digit(StateCode code, StateCode power) { return (code / power) % 3; }

/// Outgoing transitions of `x`, calling emit(to, rate) for each nonzero rate.
template <class Emit>
void for_each_transition(const Graph& g, const SirParams& params, const std::vector<StateCode>& pw, StateCode x,
                         Emit&& emit) {
    const std::size_t n = g.node_count();
    for (NodeId i = 0; i < n; ++i) {
        const unsigned s = digit(x, pw[i]);
        if (s == 1) {
            emit(x + pw[i], params.gamma[i]);
        } else if (s == 0 && params.tau > 0.0) {
            unsigned infected = 0;
            for (NodeId j : g.neighbors(i)) infected += digit(x, pw[j]) == 1;
            if (infected > 0) emit(x + pw[i], params.tau * infected);
        }
    }
}

}  // namespace

StateCode encode_state(std::span<const NodeState> states) {
    StateCode code = 0;
    StateCode power = 1;
    for (NodeState s : states) {
        code += power * static_cast<StateCode>(s);
        power *= 3;
    }
    return code;
}

std::vector<NodeState> decode_state(StateCode code, std::size_t n) {
    std::vector<NodeState> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<NodeState>(code % 3);
        code /= 3;
    }
    return out;
}

SirGenerator::SirGenerator(std::size_t nodes, std::vector<std::vector<Entry>> rows)
    : nodes_(nodes), rows_(std::move(rows)), diagonal_(rows_.size(), 0.0) {
    for (std::size_t x = 0; x < rows_.size(); ++x) {
        double out = 0.0;
        for (const Entry& e : rows_[x]) out += e.rate;
        diagonal_[x] = -out;
    }
}

double SirGenerator::rate(StateCode from, StateCode to) const {
    if (from == to) return diagonal(from);
    for (const Entry& e : off_diagonal(from)) {
        if (e.to == to) return e.rate;
    }
    return 0.0;
}

SirGenerator exact_generator(const Graph& g, const SirParams& params) {
    require_small(g);
    params.validate(g.node_count());
    const auto pw = powers_of_three(g.node_count());
    std::vector<std::vector<SirGenerator::Entry>> rows(pw.back());
    for (StateCode x = 0; x < pw.back(); ++x) {
        for_each_transition(g, params, pw, x, [&](StateCode y, double r) { rows[x].push_back({y, r}); });
    }
    return SirGenerator(g.node_count(), std::move(rows));
}

std::vector<double> exact_infection_probabilities(const Graph& g, const SirParams& params,
                                                  const InitialCondition& init) {
    require_small(g);
    const std::size_t n = g.node_count();
    params.validate(n);
    init.validate(n);
    const auto pw = powers_of_three(n);

    // hit[x * n + i] = P(node i is ever infected | current state x).
    std::vector<double> hit(static_cast<std::size_t>(pw.back()) * n, 0.0);
    std::vector<std::uint8_t> solved(pw.back(), 0);

    std::function<void(StateCode)> solve = [&](StateCode x) {
        if (solved[x]) return;
        std::vector<std::pair<StateCode, double>> next;
        double total = 0.0;
        for_each_transition(g, params, pw, x, [&](StateCode y, double r) {
            next.emplace_back(y, r);
            total += r;
        });
        double* h = &hit[static_cast<std::size_t>(x) * n];
        for (std::size_t i = 0; i < n; ++i) h[i] = digit(x, pw[i]) != 0 ? 1.0 : 0.0;
        if (total > 0.0) {
            for (const auto& [y, r] : next) solve(y);
            for (std::size_t i = 0; i < n; ++i) {
                if (h[i] == 1.0) continue;
                double acc = 0.0;
                for (const auto& [y, r] : next) acc += r / total * hit[static_cast<std::size_t>(y) * n + i];
                h[i] = acc;
            }
        }
        solved[x] = 1;
    };

    std::vector<double> result(n, 0.0);
    auto add_start = [&](StateCode x, double weight) {
        solve(x);
        for (std::size_t i = 0; i < n; ++i) result[i] += weight * hit[static_cast<std::size_t>(x) * n + i];
    };
    switch (init.policy) {
        case InitialCondition::Policy::uniform_random_single:
            for (std::size_t j = 0; j < n; ++j) add_start(pw[j], 1.0 / static_cast<double>(n));
            break;
        case InitialCondition::Policy::fixed_node:
        case InitialCondition::Policy::fixed_set: {
            StateCode x = 0;
            for (NodeId j : init.nodes) {
                if (digit(x, pw[j]) == 0) x += pw[j];
            }
            add_start(x, 1.0);
            break;
        }
    }
    return result;
}

double exact_infection_probability(const Graph& g, const SirParams& params, const InitialCondition& init,
                                   NodeId i) {
    if (i >= g.node_count()) throw std::out_of_range("node out of range");
    return exact_infection_probabilities(g, params, init)[i];
}

std::vector<double> infection_probabilities(const Graph& g, const SirParams& params, const InitialCondition& init,
                                            const ProbabilityEstimator& estimator) {
    if (estimator.mode == ProbabilityEstimator::Mode::exact) {
        return exact_infection_probabilities(g, params, init);
    }
    return monte_carlo(g, params, init, estimator.runs, estimator.seed, estimator.threads).infection_probabilities();
}

double expected_infected_time(const Graph& g, const SirParams& params, const InitialCondition& init, NodeId i,
                              const ProbabilityEstimator& estimator) {
    if (i >= g.node_count()) throw std::out_of_range("node out of range");
    return infection_probabilities(g, params, init, estimator)[i] / params.gamma[i];
}

}  // namespace cyberlab
