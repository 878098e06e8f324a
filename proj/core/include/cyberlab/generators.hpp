#pragma once

#include <cstddef>
#include <string_view>

#include "cyberlab/graph.hpp"

namespace cyberlab {

/// G(n, p): every one of the n(n-1)/2 pairs is kept independently with
/// probability p, visiting pairs in lexicographic order.
Graph erdos_renyi(std::size_t n, double p, Seed seed);

/// Preferential-attachment growth. The core is a clique on m nodes; each new
/// node draws a uniform candidate j and accepts it with probability
/// k_j / sum_l k_l (degrees frozen at the start of the step) until m distinct
/// targets are found. Final edge count is m(n - m) + m(m - 1)/2.
Graph barabasi_albert(std::size_t n, std::size_t m, Seed seed);

enum class Fixture { complete8, star8, tree8 };

/// The 8-node example networks: fully connected, star with hub 0, and the
/// branching tree 0-1, 1-2, 1-3, 2-4, 2-5, 3-6, 3-7.
Graph fixture(Fixture which);
Fixture parse_fixture(std::string_view name);

Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);

}  // namespace cyberlab
