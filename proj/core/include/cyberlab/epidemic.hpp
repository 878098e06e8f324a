#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "cyberlab/graph.hpp"
#include "cyberlab/parallel.hpp"
#include "cyberlab/rng.hpp"

namespace cyberlab {

/// Markovian SIR rates: tau per S-I edge, gamma[i] for recovery of node i.
struct SirParams {
    double tau = 0.1;
    std::vector<double> gamma;

    static SirParams homogeneous(std::size_t n, double tau, double gamma) {
        return SirParams{tau, std::vector<double>(n, gamma)};
    }

    /// Throws std::invalid_argument unless tau >= 0, gamma.size() == n and
    /// every gamma_i > 0.
    void validate(std::size_t n) const;
};

/// Who is infected at time zero.
struct InitialCondition {
    enum class Policy { uniform_random_single, fixed_node, fixed_set };

    Policy policy = Policy::uniform_random_single;
    std::vector<NodeId> nodes;

    static InitialCondition uniform() { return {}; }
    static InitialCondition node(NodeId i) { return {Policy::fixed_node, {i}}; }
    static InitialCondition set(std::vector<NodeId> s) { return {Policy::fixed_set, std::move(s)}; }

    void validate(std::size_t n) const;
};

enum class NodeState : std::uint8_t { susceptible, infected, recovered };

struct SirEvent {
    enum class Kind : std::uint8_t { seeded, infection, recovery };
    double time = 0.0;
    NodeId node = 0;
    Kind kind = Kind::seeded;
};

/// Outcome of one trajectory run to extinction.
struct OutbreakSample {
    std::vector<std::uint8_t> ever_infected;
    std::size_t final_size = 0;
    std::vector<double> infected_duration;  // 0 for nodes never infected
    std::vector<SirEvent> events;           // only filled on request
};

/// Reusable Gillespie engine for one graph and parameter set.
///
/// Every node carries its own transition rate (gamma_i when infected,
/// tau times its number of infected neighbours when susceptible); the rates
/// live in a binary sum tree so event selection and updates are
/// O(log N) per touched node.
class SirSimulator {
  public:
    struct Options {
        bool record_events = false;
        /// Stop once this many nodes were ever infected (0 = run to extinction).
        std::size_t stop_at_size = 0;
    };

    SirSimulator(const Graph& g, const SirParams& params);

    void run(Rng& rng, const InitialCondition& init, const Options& options);
    void run(Rng& rng, const InitialCondition& init) { run(rng, init, Options{}); }

    /// Nodes ever infected in the last run, in infection order.
    [[nodiscard]] std::span<const NodeId> infected_nodes() const noexcept { return infected_order_; }
    [[nodiscard]] std::size_t final_size() const noexcept { return infected_order_.size(); }
    [[nodiscard]] bool truncated() const noexcept { return truncated_; }
    [[nodiscard]] NodeState state(NodeId i) const { return state_.at(i); }
    [[nodiscard]] double infected_duration(NodeId i) const;
    [[nodiscard]] std::span<const SirEvent> events() const noexcept { return events_; }
    /// Number of (S,I,R) nodes after the last run.
    [[nodiscard]] std::size_t count(NodeState s) const;

    [[nodiscard]] OutbreakSample sample() const;

  private:
    void set_rate(NodeId i, double rate);
    NodeId pick(double u) const;
    void infect(NodeId i, double t, SirEvent::Kind kind);
    void recover(NodeId i, double t);

    const Graph* graph_;
    double tau_;
    std::vector<double> gamma_;
    std::size_t leaves_;
    std::vector<double> tree_;
    std::vector<NodeState> state_;
    std::vector<std::uint32_t> infected_neighbors_;
    std::vector<double> infected_at_;
    std::vector<double> recovered_at_;
    std::vector<NodeId> infected_order_;
    std::vector<SirEvent> events_;
    std::size_t active_ = 0;
    bool record_ = false;
    bool truncated_ = false;
};

OutbreakSample gillespie_run(const Graph& g, const SirParams& params, const InitialCondition& init, Seed seed,
                             bool record_events = false);

/// Aggregates over independent runs; run r uses stream (seed, r).
struct EnsembleStats {
    Seed seed;
    std::uint64_t runs = 0;
    std::vector<std::uint64_t> infection_count;  // runs in which node i was ever infected
    std::vector<double> mean_infected_time;      // E[time in I], zero-infection runs count as 0
    std::vector<std::uint64_t> size_histogram;   // index = final outbreak size, 0..N

    [[nodiscard]] std::size_t node_count() const noexcept { return infection_count.size(); }
    [[nodiscard]] double infection_probability(NodeId i) const;
    [[nodiscard]] std::vector<double> infection_probabilities() const;
};

EnsembleStats monte_carlo(const Graph& g, const SirParams& params, const InitialCondition& init,
                          std::uint64_t runs, Seed seed, unsigned threads = 1);

/// Final outbreak sizes of `runs` trajectories, in run order.
std::vector<std::uint32_t> outbreak_sizes(const Graph& g, const SirParams& params, const InitialCondition& init,
                                          std::uint64_t runs, Seed seed, unsigned threads = 1);

/// (size, frequency) for every observed final size; frequencies sum to 1.
std::vector<std::pair<std::size_t, double>> outbreak_histogram(const EnsembleStats& stats);

/// Smallest final size counted as a pandemic for fraction q of n nodes.
std::size_t pandemic_size_threshold(double q, std::size_t n);

struct PandemicCriterion {
    double size_fraction = 0.10;  // q
    double frequency = 0.001;     // epsilon
};

struct PandemicClassification {
    bool pandemic_prone = false;
    double frequency = 0.0;
};

PandemicClassification classify_pandemic(const EnsembleStats& stats, double size_fraction,
                                         double freq_threshold);
inline PandemicClassification classify_pandemic(const EnsembleStats& stats, PandemicCriterion c) {
    return classify_pandemic(stats, c.size_fraction, c.frequency);
}

/// Result of a pandemic check that may stop early.
struct PandemicCheck {
    bool pandemic_prone = false;
    std::uint64_t pandemic_runs = 0;
    std::uint64_t runs_evaluated = 0;
    std::uint64_t runs_requested = 0;

    /// pandemic_runs / runs_evaluated; a lower bound on the full-ensemble
    /// frequency scaled by runs_evaluated / runs_requested when stopped early.
    [[nodiscard]] double frequency() const {
        return runs_evaluated == 0 ? 0.0 : static_cast<double>(pandemic_runs) / static_cast<double>(runs_evaluated);
    }
};

/// Pandemic classification of a uniform single-seed ensemble of `runs`
/// trajectories. Each trajectory stops as soon as it reaches the pandemic
/// size, and the ensemble stops once ceil(eps * runs) pandemics were seen:
/// at that point the full ensemble is pandemic-prone regardless of the rest.
/// Stopping points are fixed waves of runs, so the outcome and the counts
/// are identical for any thread count.
PandemicCheck check_pandemic(const Graph& g, const SirParams& params, PandemicCriterion criterion,
                             std::uint64_t runs, Seed seed, unsigned threads = 1, bool early_exit = true);

/// Final sizes of `runs` uniform single-seed outbreaks where run r first
/// draws its own graph with `make_graph(rng)` from stream r of `seed`.
template <class GraphFactory>
std::vector<std::uint32_t> outbreak_sizes_resampled(GraphFactory&& make_graph, const SirParams& params,
                                                    std::uint64_t runs, Seed seed, unsigned threads = 1);

/// Variant where every run sees its own graph drawn by `make_graph(rng)`
/// (used for per-run random edge removal baselines).
template <class GraphFactory>
PandemicCheck check_pandemic_resampled(GraphFactory&& make_graph, std::size_t n, const SirParams& params,
                                       PandemicCriterion criterion, std::uint64_t runs, Seed seed);

struct ThresholdIndex {
    double index = 0.0;
    bool supercritical = false;
};

/// tau / (tau + gamma) * (E[K^2] - E[K]) / E[K]; supercritical iff > 1.
ThresholdIndex epidemic_threshold(double mean_degree, double mean_sq_degree, double tau, double gamma);

/// Threshold index for a Poisson(lambda) degree distribution, the large-N
/// limit of ER(n, lambda / (n - 1)): tau * lambda / (tau + gamma).
ThresholdIndex poisson_threshold(double lambda, double tau, double gamma);

/// (E[K], E[K^2]) of the empirical degree distribution.
std::pair<double, double> degree_moments(const Graph& g);

/// CSV `size,count,frequency`.
void write_histogram_csv(std::ostream& out, const EnsembleStats& stats);
/// JSON object with seed, runs and per-node counts, probabilities, mean infected time.
void write_ensemble_json(std::ostream& out, const EnsembleStats& stats);

// ---------------------------------------------------------------------------

template <class GraphFactory>
PandemicCheck check_pandemic_resampled(GraphFactory&& make_graph, std::size_t n, const SirParams& params,
                                       PandemicCriterion criterion, std::uint64_t runs, Seed seed) {
    params.validate(n);
    PandemicCheck out;
    out.runs_requested = runs;
    const std::size_t limit = pandemic_size_threshold(criterion.size_fraction, n);
    const auto needed = static_cast<std::uint64_t>(std::ceil(criterion.frequency * static_cast<double>(runs)));
    for (std::uint64_t r = 0; r < runs; ++r) {
        Rng rng = make_rng(seed, r);
        const Graph g = make_graph(rng);
        SirSimulator sim(g, params);
        sim.run(rng, InitialCondition::uniform(), {false, limit});
        ++out.runs_evaluated;
        if (sim.final_size() >= limit) ++out.pandemic_runs;
        if (needed > 0 && out.pandemic_runs >= needed) break;
    }
    out.pandemic_prone = static_cast<double>(out.pandemic_runs) >= criterion.frequency * static_cast<double>(runs);
    return out;
}

template <class GraphFactory>
std::vector<std::uint32_t> outbreak_sizes_resampled(GraphFactory&& make_graph, const SirParams& params,
                                                    std::uint64_t runs, Seed seed, unsigned threads) {
    std::vector<std::uint32_t> sizes(runs);
    for_each_block(runs, 256, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = make_rng(seed, r);
            const Graph g = make_graph(rng);
            SirSimulator sim(g, params);
            sim.run(rng, InitialCondition::uniform());
            sizes[r] = static_cast<std::uint32_t>(sim.final_size());
        }
    });
    return sizes;
}

}  // namespace cyberlab
