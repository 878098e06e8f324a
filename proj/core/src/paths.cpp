#include "cyberlab/paths.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyberlab {

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> dist(n, kUnreachable);
    std::vector<NodeId> queue;
    queue.reserve(n);
    dist.at(source) = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

DistanceMatrix shortest_path_lengths(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> hops;
    hops.reserve(n * n);
    for (NodeId s = 0; s < n; ++s) {
        auto row = bfs_distances(g, s);
        hops.insert(hops.end(), row.begin(), row.end());
    }
    return DistanceMatrix(n, std::move(hops));
}

double avg_shortest_path(const Graph& g) {
    const std::size_t n = g.node_count();
    std::uint64_t total = 0;
    std::uint64_t pairs = 0;
    for (NodeId s = 0; s < n; ++s) {
        const auto dist = bfs_distances(g, s);
        for (NodeId t = s + 1; t < n; ++t) {
            if (dist[t] != kUnreachable) {
                total += dist[t];
                ++pairs;
            }
        }
    }
    if (pairs == 0) {
        throw std::domain_error("average shortest path undefined: no connected node pair");
    }
    return static_cast<double>(total) / static_cast<double>(pairs);
}

Components connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    Components out;
    out.label.assign(n, kUnreachable);
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (out.label[s] != kUnreachable) continue;
        const auto id = static_cast<std::uint32_t>(out.members.size());
        auto& part = out.members.emplace_back();
        out.label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            part.push_back(u);
            for (NodeId w : g.neighbors(u)) {
                if (out.label[w] == kUnreachable) {
                    out.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(part.begin(), part.end());
    }
    return out;
}

}  // namespace cyberlab
