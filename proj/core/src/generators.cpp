#include "cyberlab/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyberlab/rng.hpp"

namespace cyberlab {

Graph erdos_renyi(std::size_t n, double p, Seed seed) {
    if (n < 1) throw std::invalid_argument("erdos_renyi: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
    Rng rng = make_rng(seed);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * (n - 1) / 2 * p * 1.1) + 16);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (uniform01(rng) < p) edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

Graph barabasi_albert(std::size_t n, std::size_t m, Seed seed) {
    if (m < 1) throw std::invalid_argument("barabasi_albert: m must be >= 1");
    if (n < m) throw std::invalid_argument("barabasi_albert: n must be >= m");
    Rng rng = make_rng(seed);

    std::vector<Edge> edges;
    edges.reserve(m * n);
    std::vector<std::size_t> degree(n, 0);
    for (NodeId i = 0; i < m; ++i) {
        for (NodeId j = i + 1; j < m; ++j) {
            edges.emplace_back(i, j);
            ++degree[i];
            ++degree[j];
        }
    }
    std::size_t degree_sum = m * (m - 1);

    std::vector<NodeId> targets;
    targets.reserve(m);
    for (std::size_t i = m; i < n; ++i) {
        const auto existing = static_cast<NodeId>(i);
        std::uniform_int_distribution<NodeId> pick(0, existing - 1);
        targets.clear();
        while (targets.size() < m) {
            const NodeId j = pick(rng);
            // A one-node core has no edges yet; fall back to uniform attachment.
            const bool accept =
                degree_sum == 0 ||
                uniform01(rng) < static_cast<double>(degree[j]) / static_cast<double>(degree_sum);
            if (!accept) continue;
            if (std::find(targets.begin(), targets.end(), j) != targets.end()) continue;
            targets.push_back(j);
        }
        for (NodeId j : targets) {
            edges.emplace_back(j, static_cast<NodeId>(i));
            ++degree[j];
            ++degree[i];
        }
        degree_sum += 2 * m;
    }
    return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

Graph fixture(Fixture which) {
    switch (which) {
        case Fixture::complete8:
            return complete_graph(8);
        case Fixture::star8: {
            std::vector<Edge> edges;
            for (NodeId leaf = 1; leaf < 8; ++leaf) edges.emplace_back(0, leaf);
            return Graph(8, std::move(edges));
        }
        case Fixture::tree8:
            return Graph(8, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}});
    }
    throw std::invalid_argument("unknown fixture");
}

Fixture parse_fixture(std::string_view name) {
    if (name == "complete8") return Fixture::complete8;
    if (name == "star8") return Fixture::star8;
    if (name == "tree8") return Fixture::tree8;
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace cyberlab
