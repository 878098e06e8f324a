#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cyberlab {

using NodeId = std::uint32_t;

/// Master seed for a deterministic pseudo-random stream.
struct Seed {
    std::uint64_t value = 0;

    friend bool operator==(Seed, Seed) = default;
};

/// Undirected edge stored with `u < v`.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    Edge() = default;
    Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on nodes 0..n-1.
///
/// Edges are kept sorted lexicographically; the index of an edge in that
/// order is its edge id. Adjacency lists are sorted ascending. A Graph is
/// immutable once built, so it can be shared read-only between workers.
class Graph {
  public:
    Graph() = default;

    /// Builds a graph from an edge list. Throws std::invalid_argument on
    /// self-loops, duplicate edges, or endpoints outside [0, n).
    Graph(std::size_t n, std::vector<Edge> edges);

    static Graph empty(std::size_t n) { return Graph(n, {}); }

    [[nodiscard]] std::size_t node_count() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }

    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
    [[nodiscard]] std::span<const NodeId> neighbors(NodeId i) const { return adjacency_.at(i); }
    [[nodiscard]] std::size_t degree(NodeId i) const { return adjacency_.at(i).size(); }

    [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;
    /// Position of the edge in edges(), if present.
    [[nodiscard]] std::optional<std::size_t> edge_index(NodeId a, NodeId b) const;

    /// Dense 0/1 adjacency matrix, row major. Only for n <= 64.
    [[nodiscard]] std::vector<std::uint8_t> adjacency_matrix() const;

    /// Copy of this graph without the given edges. Unknown edges are an error.
    [[nodiscard]] Graph without_edges(std::span<const Edge> removed) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.node_count() == b.node_count() && a.edges_ == b.edges_;
    }

  private:
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
};

}  // namespace cyberlab
