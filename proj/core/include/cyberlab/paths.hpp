#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "cyberlab/graph.hpp"

namespace cyberlab {

/// Hop count marker for node pairs with no connecting path.
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// All-pairs hop counts, row major n x n.
class DistanceMatrix {
  public:
    DistanceMatrix(std::size_t n, std::vector<std::uint32_t> hops) : n_(n), hops_(std::move(hops)) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::uint32_t at(NodeId i, NodeId j) const { return hops_.at(i * n_ + j); }
    [[nodiscard]] bool reachable(NodeId i, NodeId j) const { return at(i, j) != kUnreachable; }

  private:
    std::size_t n_;
    std::vector<std::uint32_t> hops_;
};

/// Hop counts from `source` to every node (kUnreachable if disconnected).
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

DistanceMatrix shortest_path_lengths(const Graph& g);

/// Mean hop count over connected unordered pairs i != j. Pairs in different
/// components are skipped. Throws std::domain_error if no pair is connected.
double avg_shortest_path(const Graph& g);

struct Components {
    std::vector<std::uint32_t> label;             // component id per node
    std::vector<std::vector<NodeId>> members;     // ordered by smallest member

    [[nodiscard]] std::size_t count() const noexcept { return members.size(); }
};

Components connected_components(const Graph& g);

}  // namespace cyberlab
