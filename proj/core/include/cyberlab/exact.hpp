#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyberlab/epidemic.hpp"
#include "cyberlab/graph.hpp"

namespace cyberlab {

/// Largest graph the exact solvers accept (3^N states).
inline constexpr std::size_t kExactMaxNodes = 10;

/// Base-3 state code: digit i is the state of node i (0 = S, 1 = I, 2 = R).
using StateCode = std::uint32_t;

StateCode encode_state(std::span<const NodeState> states);
std::vector<NodeState> decode_state(StateCode code, std::size_t n);

/// Infinitesimal generator of the SIR chain over {S,I,R}^N in sparse form.
/// Off-diagonal entries only connect states differing in a single node.
class SirGenerator {
  public:
    struct Entry {
        StateCode to;
        double rate;
    };

    SirGenerator(std::size_t nodes, std::vector<std::vector<Entry>> rows);

    [[nodiscard]] std::size_t nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t state_count() const noexcept { return rows_.size(); }
    [[nodiscard]] std::span<const Entry> off_diagonal(StateCode from) const { return rows_.at(from); }
    [[nodiscard]] double diagonal(StateCode from) const { return diagonal_.at(from); }
    /// q_xy including the diagonal.
    [[nodiscard]] double rate(StateCode from, StateCode to) const;

  private:
    std::size_t nodes_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<double> diagonal_;
};

/// Throws std::length_error when the graph has more than kExactMaxNodes nodes.
SirGenerator exact_generator(const Graph& g, const SirParams& params);

/// Exact P(A_i) for every node: probability that node i is ever infected,
/// by dynamic programming over the embedded jump chain (rate ratios) on the
/// states reachable from the initial condition.
std::vector<double> exact_infection_probabilities(const Graph& g, const SirParams& params,
                                                  const InitialCondition& init);

double exact_infection_probability(const Graph& g, const SirParams& params, const InitialCondition& init,
                                   NodeId i);

/// How infection probabilities are obtained for loss evaluation.
struct ProbabilityEstimator {
    enum class Mode { exact, monte_carlo };

    Mode mode = Mode::monte_carlo;
    std::uint64_t runs = 100'000;
    Seed seed{};
    unsigned threads = 1;

    static ProbabilityEstimator exact() { return {Mode::exact, 0, Seed{}, 1}; }
    static ProbabilityEstimator sampled(std::uint64_t runs, Seed seed, unsigned threads = 1) {
        return {Mode::monte_carlo, runs, seed, threads};
    }
};

std::vector<double> infection_probabilities(const Graph& g, const SirParams& params, const InitialCondition& init,
                                            const ProbabilityEstimator& estimator);

/// Expected time node i spends infected, P(A_i) / gamma_i.
double expected_infected_time(const Graph& g, const SirParams& params, const InitialCondition& init, NodeId i,
                              const ProbabilityEstimator& estimator);

}  // namespace cyberlab
