#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "cyberlab/graph.hpp"

namespace cyberlab {

enum class CentralityKind { degree, betweenness, investment };

std::string_view to_string(CentralityKind kind);
CentralityKind parse_centrality_kind(std::string_view name);

/// One non-negative score per node.
struct CentralityVector {
    CentralityKind kind = CentralityKind::degree;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// One non-negative score per edge, aligned with Graph::edges().
struct EdgeCentralityMap {
    std::vector<Edge> edges;
    std::vector<double> values;

    [[nodiscard]] double at(NodeId a, NodeId b) const;
};

CentralityVector degree_centrality(const Graph& g);

/// Sum over unordered pairs {j, h} not containing i of sigma_jh(i) / sigma_jh.
/// Disconnected pairs contribute nothing. Brandes accumulation, one BFS per
/// source; sources are processed in fixed blocks so any thread count gives
/// bit-identical output.
CentralityVector betweenness_centrality(const Graph& g, unsigned threads = 1);

/// Same pair convention, counting shortest paths through each edge
/// (endpoints' own pair included).
EdgeCentralityMap edge_betweenness(const Graph& g, unsigned threads = 1);

CentralityVector compute_centrality(const Graph& g, CentralityKind kind, unsigned threads = 1);

/// w_i = c_i / sum_j c_j. Throws std::invalid_argument if the sum is not positive.
std::vector<double> allocation_weights(std::span<const double> c);
inline std::vector<double> allocation_weights(const CentralityVector& c) {
    return allocation_weights(std::span<const double>(c.values));
}

/// 1 / w_i where w_i != 0, else 0 (unnormalized).
std::vector<double> inverse_weights(std::span<const double> w);

/// Node ids by descending score; equal scores keep ascending id.
std::vector<NodeId> rank_descending(std::span<const double> scores);

/// Highest score, smallest id among ties.
NodeId argmax(std::span<const double> scores);

/// CSV `node,degree,betweenness[,investment]`.
void write_centrality_csv(std::ostream& out, const Graph& g, const CentralityVector* investment = nullptr,
                          unsigned threads = 1);

}  // namespace cyberlab
