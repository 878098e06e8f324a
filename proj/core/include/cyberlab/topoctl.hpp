#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyberlab/centrality.hpp"
#include "cyberlab/epidemic.hpp"
#include "cyberlab/graph.hpp"
#include "cyberlab/rng.hpp"

namespace cyberlab {

/// Pandemic testing used by the intervention loops: a cheap check after every
/// step and a larger confirmation run (fresh stream) before declaring control.
struct ControlCheck {
    PandemicCriterion criterion;
    std::uint64_t check_runs = 10'000;
    std::uint64_t confirm_runs = 100'000;
    Seed seed{1};
    unsigned threads = 1;
};

struct InterventionStep {
    std::size_t step = 0;
    std::string action;  // "edge" or "split"
    std::string target;
    double pandemic_frequency = 0.0;
    double avg_path_length = 0.0;
};

struct SplitRecord {
    NodeId node = 0;      // node that was split (id in the graph at that time)
    NodeId created = 0;   // id of the appended node
    NodeId original = 0;  // node of the input graph that `node` descends from
    std::vector<NodeId> moved;
    bool degenerate = false;  // nothing was rewired
};

struct InterventionResult {
    Graph graph;
    std::vector<Edge> removed;        // deletion order
    std::vector<SplitRecord> splits;  // split order
    std::size_t original_nodes = 0;
    std::size_t original_edges = 0;
    bool controlled = false;
    double frequency_before = 0.0;
    double frequency_after = 0.0;
    double path_before = 0.0;
    double path_after = 0.0;
    std::vector<InterventionStep> log;

    [[nodiscard]] std::size_t actions() const { return removed.size() + splits.size(); }
    [[nodiscard]] double removed_fraction() const {
        return original_edges == 0 ? 0.0 : static_cast<double>(removed.size()) / static_cast<double>(original_edges);
    }
    [[nodiscard]] double split_fraction() const {
        return original_nodes == 0 ? 0.0 : static_cast<double>(splits.size()) / static_cast<double>(original_nodes);
    }
    /// Distinct input-graph nodes that were split at least once, ascending.
    [[nodiscard]] std::vector<NodeId> split_origins() const;
};

/// Thrown when a loop runs out of edges or splits; carries the partial result.
class ControlNotAchieved : public std::runtime_error {
  public:
    ControlNotAchieved(const std::string& what, InterventionResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    [[nodiscard]] const InterventionResult& partial() const { return partial_; }

  private:
    InterventionResult partial_;
};

/// Repeatedly deletes the `batch` edges of highest edge betweenness
/// (recomputed on the current graph, ties by edge order) until the pandemic
/// check passes. batch = 0 means 1% of the input edges.
InterventionResult edge_removal_intervention(const Graph& g, const SirParams& params, const ControlCheck& check,
                                             std::size_t batch = 0);

/// Removes round(fraction * |E|) edges chosen uniformly at random.
Graph random_edge_removal(const Graph& g, double fraction, Rng& rng);
Graph random_edge_removal(const Graph& g, double fraction, Seed seed);

struct RandomRemovalResult {
    bool controlled = false;
    double fraction = 0.0;
    double frequency = 0.0;
    double avg_path_length = 0.0;  // mean over `path_samples` draws at the stopping fraction
    std::vector<InterventionStep> log;
};

/// Smallest fraction on the grid step, 2*step, ... at which removing a fresh
/// uniformly random edge set for every simulated run controls pandemics.
RandomRemovalResult random_removal_threshold(const Graph& g, const SirParams& params, const ControlCheck& check,
                                             double step = 0.01, double max_fraction = 1.0,
                                             std::size_t path_samples = 5);

/// Neighbors of `i` that move to the new node: ranked by descending
/// centrality (ties by id), every second rank starting at rank 2.
std::vector<NodeId> alternating_split_set(const Graph& g, NodeId i, std::span<const double> centrality);
/// Neighbors of `i` that move under the keep-the-hubs variant: the floor(k/2)
/// lowest-degree neighbors (ties by id, the higher id moves first).
std::vector<NodeId> low_degree_split_set(const Graph& g, NodeId i);

/// Appends node n and rewires the edges (i, j) for j in `moved` to (n, j).
Graph apply_split(const Graph& g, NodeId i, std::span<const NodeId> moved);

Graph split_node(const Graph& g, NodeId i, CentralityKind kind, unsigned threads = 1);
Graph split_node(const Graph& g, NodeId i, const CentralityVector& centrality);
Graph split_node_modified(const Graph& g, NodeId i);

enum class SplitRule { alternating, keep_hubs };

std::string_view to_string(SplitRule rule);
SplitRule parse_split_rule(std::string_view name);

/// Splits the most central node of the current graph until the pandemic
/// check passes or `max_splits` is exhausted.
InterventionResult splitting_intervention(const Graph& g, const SirParams& params, const ControlCheck& check,
                                          CentralityKind kind, SplitRule rule = SplitRule::alternating,
                                          std::size_t max_splits = 200);

/// CSV `step,action,target,pandemic_frequency,avg_path_length`.
void write_intervention_log_csv(std::ostream& out, std::span<const InterventionStep> log);

}  // namespace cyberlab
