#include <gtest/gtest.h>

#include <sstream>

#include "cyberlab/centrality.hpp"
#include "cyberlab/generators.hpp"
#include "oracles.hpp"

using namespace cyberlab;

TEST(DegreeCentrality, Fixtures) {
    EXPECT_EQ(degree_centrality(fixture(Fixture::tree8))[1], 3.0);
    const auto star = degree_centrality(fixture(Fixture::star8));
    EXPECT_EQ(star[0], 7.0);
    for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(star[i], 1.0);
    for (double v : degree_centrality(Graph::empty(4)).values) EXPECT_EQ(v, 0.0);
}

TEST(Betweenness, Fixtures) {
    EXPECT_DOUBLE_EQ(betweenness_centrality(fixture(Fixture::tree8))[1], 15.0);
    EXPECT_DOUBLE_EQ(betweenness_centrality(fixture(Fixture::star8))[0], 21.0);
    for (double v : betweenness_centrality(fixture(Fixture::complete8)).values) EXPECT_EQ(v, 0.0);
}

TEST(EdgeBetweenness, Fixtures) {
    const auto tree = edge_betweenness(fixture(Fixture::tree8));
    EXPECT_DOUBLE_EQ(tree.at(1, 2), 15.0);
    EXPECT_DOUBLE_EQ(tree.at(0, 1), 7.0);
    const auto tri = edge_betweenness(complete_graph(3));
    for (double v : tri.values) EXPECT_DOUBLE_EQ(v, 1.0);
    EXPECT_THROW((void)tri.at(0, 5), std::out_of_range);
}

TEST(Betweenness, MatchesPathEnumerationOnRandomGraphs) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Graph g = s % 2 ? erdos_renyi(10, 0.3, Seed{s}) : barabasi_albert(10, 2, Seed{s});
        const auto ref = oracle::brute_betweenness(g);
        const auto node = betweenness_centrality(g);
        const auto edge = edge_betweenness(g);
        for (NodeId i = 0; i < 10; ++i) EXPECT_NEAR(node[i], ref.node[i], 1e-9);
        for (std::size_t e = 0; e < edge.edges.size(); ++e) {
            const auto key = std::make_pair(static_cast<int>(edge.edges[e].u), static_cast<int>(edge.edges[e].v));
            EXPECT_NEAR(edge.values[e], ref.edge.at(key), 1e-9);
        }
    }
}

TEST(Betweenness, ThreadCountDoesNotChangeOutput) {
    const Graph g = barabasi_albert(300, 3, Seed{4});
    EXPECT_EQ(betweenness_centrality(g, 1).values, betweenness_centrality(g, 4).values);
    EXPECT_EQ(edge_betweenness(g, 1).values, edge_betweenness(g, 3).values);
}

TEST(AllocationWeights, Examples) {
    EXPECT_EQ(allocation_weights(std::vector<double>{1, 1, 2}), (std::vector<double>{0.25, 0.25, 0.5}));
    EXPECT_EQ(allocation_weights(std::vector<double>{0, 3, 1}), (std::vector<double>{0, 0.75, 0.25}));
    for (double w : allocation_weights(std::vector<double>(4, 2.5))) EXPECT_DOUBLE_EQ(w, 0.25);
    EXPECT_THROW((void)allocation_weights(std::vector<double>{0, 0}), std::invalid_argument);
}

TEST(InverseWeights, Examples) {
    EXPECT_EQ(inverse_weights(std::vector<double>{0.5, 0.5, 0}), (std::vector<double>{2, 2, 0}));
    const auto w = inverse_weights(std::vector<double>{0.25, 0.75});
    EXPECT_DOUBLE_EQ(w[0], 4.0);
    EXPECT_DOUBLE_EQ(w[1], 4.0 / 3.0);
    for (double v : inverse_weights(std::vector<double>(5, 0.2))) EXPECT_DOUBLE_EQ(v, 5.0);
}

TEST(Ranking, TiesKeepAscendingId) {
    const std::vector<double> s{1, 3, 3, 0, 2};
    EXPECT_EQ(rank_descending(s), (std::vector<NodeId>{1, 2, 4, 0, 3}));
    EXPECT_EQ(argmax(s), 1u);
}

TEST(CentralityKinds, ParseAndCsv) {
    EXPECT_EQ(parse_centrality_kind("betweenness"), CentralityKind::betweenness);
    EXPECT_EQ(to_string(CentralityKind::degree), "degree");
    EXPECT_THROW(parse_centrality_kind("pagerank"), std::invalid_argument);
    std::ostringstream out;
    write_centrality_csv(out, fixture(Fixture::star8));
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "node,degree,betweenness");
}
