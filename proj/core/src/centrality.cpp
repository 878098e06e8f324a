#include "cyberlab/centrality.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cyberlab/parallel.hpp"

namespace cyberlab {

std::string_view to_string(CentralityKind kind) {
    switch (kind) {
        case CentralityKind::degree: return "degree";
        case CentralityKind::betweenness: return "betweenness";
        case CentralityKind::investment: return "investment";
    }
    return "?";
}

CentralityKind parse_centrality_kind(std::string_view name) {
    if (name == "degree" || name == "deg") return CentralityKind::degree;
    if (name == "betweenness" || name == "bet") return CentralityKind::betweenness;
    if (name == "investment" || name == "inv") return CentralityKind::investment;
    throw std::invalid_argument("unknown centrality kind '" + std::string(name) + "'");
}

double EdgeCentralityMap::at(NodeId a, NodeId b) const {
    const Edge key(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) throw std::out_of_range("edge not in centrality map");
    return values[static_cast<std::size_t>(it - edges.begin())];
}

CentralityVector degree_centrality(const Graph& g) {
    CentralityVector c{CentralityKind::degree, std::vector<double>(g.node_count())};
    for (NodeId i = 0; i < g.node_count(); ++i) c.values[i] = static_cast<double>(g.degree(i));
    return c;
}

namespace {

constexpr std::size_t kSourceBlock = 32;

/// Scratch buffers for one single-source pass.
struct BrandesWorkspace {
    std::vector<NodeId> order;
    std::vector<std::int64_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;

    explicit BrandesWorkspace(std::size_t n) : dist(n), sigma(n), delta(n) { order.reserve(n); }
};

/// Adjacency-aligned edge ids: edge_of[u][k] is the id of (u, neighbors(u)[k]).
std::vector<std::vector<std::size_t>> adjacency_edge_ids(const Graph& g) {
    std::vector<std::vector<std::size_t>> ids(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto nb = g.neighbors(u);
        ids[u].reserve(nb.size());
        for (NodeId w : nb) ids[u].push_back(*g.edge_index(u, w));
    }
    return ids;
}

/// One BFS from `s` followed by dependency accumulation. Adds ordered-pair
/// contributions into node_acc / edge_acc (either may be empty).
void accumulate_source(const Graph& g, NodeId s, BrandesWorkspace& ws,
                       const std::vector<std::vector<std::size_t>>* edge_ids,
                       std::vector<double>& node_acc, std::vector<double>& edge_acc) {
    std::fill(ws.dist.begin(), ws.dist.end(), -1);
    std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
    std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
    ws.order.clear();

    ws.dist[s] = 0;
    ws.sigma[s] = 1.0;
    ws.order.push_back(s);
    for (std::size_t head = 0; head < ws.order.size(); ++head) {
        const NodeId v = ws.order[head];
        for (NodeId w : g.neighbors(v)) {
            if (ws.dist[w] < 0) {
                ws.dist[w] = ws.dist[v] + 1;
                ws.order.push_back(w);
            }
            if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
        }
    }

    for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
        const NodeId w = *it;
        auto nb = g.neighbors(w);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const NodeId v = nb[k];
            if (ws.dist[v] != ws.dist[w] - 1) continue;
            const double share = ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
            ws.delta[v] += share;
            if (edge_ids != nullptr) edge_acc[(*edge_ids)[w][k]] += share;
        }
        if (w != s && !node_acc.empty()) node_acc[w] += ws.delta[w];
    }
}

struct BrandesResult {
    std::vector<double> node;
    std::vector<double> edge;
};

BrandesResult run_brandes(const Graph& g, bool want_nodes, bool want_edges, unsigned threads) {
    const std::size_t n = g.node_count();
    const std::size_t m = g.edge_count();
    std::vector<std::vector<std::size_t>> edge_ids;
    if (want_edges) edge_ids = adjacency_edge_ids(g);

    const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
    std::vector<BrandesResult> partial(blocks);
    for_each_block(n, kSourceBlock, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
        BrandesWorkspace ws(n);
        auto& out = partial[b];
        if (want_nodes) out.node.assign(n, 0.0);
        if (want_edges) out.edge.assign(m, 0.0);
        for (std::size_t s = begin; s < end; ++s) {
            accumulate_source(g, static_cast<NodeId>(s), ws, want_edges ? &edge_ids : nullptr,
                              out.node, out.edge);
        }
    });

    BrandesResult total;
    if (want_nodes) total.node.assign(n, 0.0);
    if (want_edges) total.edge.assign(m, 0.0);
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < p.node.size(); ++i) total.node[i] += p.node[i];
        for (std::size_t e = 0; e < p.edge.size(); ++e) total.edge[e] += p.edge[e];
    }
    // Every unordered pair was visited from both ends.
    for (double& x : total.node) x *= 0.5;
    for (double& x : total.edge) x *= 0.5;
    return total;
}

}  // namespace

CentralityVector betweenness_centrality(const Graph& g, unsigned threads) {
    auto r = run_brandes(g, true, false, threads);
    return CentralityVector{CentralityKind::betweenness, std::move(r.node)};
}

EdgeCentralityMap edge_betweenness(const Graph& g, unsigned threads) {
    auto r = run_brandes(g, false, true, threads);
    auto edges = g.edges();
    return EdgeCentralityMap{std::vector<Edge>(edges.begin(), edges.end()), std::move(r.edge)};
}

CentralityVector compute_centrality(const Graph& g, CentralityKind kind, unsigned threads) {
    switch (kind) {
        case CentralityKind::degree: return degree_centrality(g);
        case CentralityKind::betweenness: return betweenness_centrality(g, threads);
        case CentralityKind::investment: break;
    }
    throw std::invalid_argument("investment centrality needs a steady-state profile, not a graph");
}

std::vector<double> allocation_weights(std::span<const double> c) {
    double total = 0.0;
    for (double x : c) {
        if (!(x >= 0.0)) throw std::invalid_argument("centrality values must be finite and >= 0");
        total += x;
    }
    if (!(total > 0.0)) throw std::invalid_argument("allocation weights need positive total centrality");
    std::vector<double> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] / total;
    return w;
}

std::vector<double> inverse_weights(std::span<const double> w) {
    std::vector<double> inv(w.size(), 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 0.0) inv[i] = 1.0 / w[i];
    }
    return inv;
}

std::vector<NodeId> rank_descending(std::span<const double> scores) {
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
    return order;
}

NodeId argmax(std::span<const double> scores) {
    if (scores.empty()) throw std::invalid_argument("argmax of empty score vector");
    NodeId best = 0;
    for (NodeId i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) best = i;
    }
    return best;
}

void write_centrality_csv(std::ostream& out, const Graph& g, const CentralityVector* investment,
                          unsigned threads) {
    const auto deg = degree_centrality(g);
    const auto bet = betweenness_centrality(g, threads);
    out << "node,degree,betweenness";
    if (investment != nullptr) out << ",investment";
    out << '\n';
    for (NodeId i = 0; i < g.node_count(); ++i) {
        out << i << ',' << deg[i] << ',' << bet[i];
        if (investment != nullptr) out << ',' << investment->values.at(i);
        out << '\n';
    }
}

}  // namespace cyberlab
