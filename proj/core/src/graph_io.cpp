#include "cyberlab/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyberlab {

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "n=" << g.node_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    long long n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        if (n < 0) {
            if (line.compare(first, 2, "n=") != 0) {
                throw std::runtime_error("edge list: expected 'n=<N>' header on line " +
                                         std::to_string(line_no));
            }
            n = std::stoll(line.substr(first + 2));
            if (n < 0) throw std::runtime_error("edge list: negative node count");
            continue;
        }
        std::istringstream fields(line);
        long long i = -1;
        long long j = -1;
        if (!(fields >> i >> j) || i < 0 || j < 0) {
            throw std::runtime_error("edge list: malformed edge on line " + std::to_string(line_no));
        }
        if (i >= j) {
            throw std::runtime_error("edge list: expected i < j on line " + std::to_string(line_no));
        }
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
    if (n < 0) throw std::runtime_error("edge list: missing 'n=<N>' header");
    try {
        return Graph(static_cast<std::size_t>(n), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("edge list: ") + e.what());
    }
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_edge_list(out, g);
}

Graph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return read_edge_list(in);
}

void write_degree_csv(std::ostream& out, const Graph& g) {
    out << "node,degree\n";
    for (NodeId i = 0; i < g.node_count(); ++i) out << i << ',' << g.degree(i) << '\n';
}

}  // namespace cyberlab
