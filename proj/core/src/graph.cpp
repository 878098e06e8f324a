#include "cyberlab/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cyberlab {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)), adjacency_(n) {
    for (const Edge& e : edges_) {
        if (e.u == e.v) {
            throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        }
        if (e.v >= n) {
            throw std::invalid_argument("edge endpoint " + std::to_string(e.v) +
                                        " outside [0, " + std::to_string(n) + ")");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw std::invalid_argument("duplicate edge");
    }
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
    }
}

bool Graph::has_edge(NodeId a, NodeId b) const { return edge_index(a, b).has_value(); }

std::optional<std::size_t> Graph::edge_index(NodeId a, NodeId b) const {
    if (a == b) return std::nullopt;
    const Edge key(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<std::uint8_t> Graph::adjacency_matrix() const {
    const std::size_t n = node_count();
    if (n > 64) {
        throw std::length_error("dense adjacency matrix limited to 64 nodes");
    }
    std::vector<std::uint8_t> a(n * n, 0);
    for (const Edge& e : edges_) {
        a[e.u * n + e.v] = 1;
        a[e.v * n + e.u] = 1;
    }
    return a;
}

Graph Graph::without_edges(std::span<const Edge> removed) const {
    std::vector<char> drop(edges_.size(), 0);
    for (const Edge& e : removed) {
        auto idx = edge_index(e.u, e.v);
        if (!idx) {
            throw std::invalid_argument("cannot remove missing edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ")");
        }
        drop[*idx] = 1;
    }
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (!drop[k]) kept.push_back(edges_[k]);
    }
    return Graph(node_count(), std::move(kept));
}

}  // namespace cyberlab
