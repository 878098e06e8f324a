#pragma once

#include <filesystem>
#include <iosfwd>

#include "cyberlab/graph.hpp"

namespace cyberlab {

// Edge-list text format:
//   n=<N>
//   i j        (one edge per line, 0-based, i < j)
// Blank lines and lines starting with '#' are ignored on input.

void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

void save_edge_list(const std::filesystem::path& path, const Graph& g);
Graph load_edge_list(const std::filesystem::path& path);

/// CSV with header `node,degree`.
void write_degree_csv(std::ostream& out, const Graph& g);

}  // namespace cyberlab
