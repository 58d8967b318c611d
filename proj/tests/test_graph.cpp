#include <doctest.h>

#include <set>

#include "generate.hpp"
#include "graph.hpp"
#include "helpers.hpp"

using namespace pmc;
using namespace pmc::test;

TEST_CASE("parse_graph accepts the edge-list format") {
    Graph g = parse_graph("2 1\n1 2\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(0, 1));

    Graph empty = parse_graph("3 0\n");
    CHECK(empty.vertex_count() == 3);
    CHECK(empty.edge_count() == 0);

    Graph triangle = parse_graph("# a triangle\n3 3\n1 2\n2 3\n1 3\n");
    CHECK(triangle.edge_count() == 3);
    CHECK(triangle.has_edge(0, 2));

    Graph spaced = parse_graph("  2   1 \n\n 1\t2\n# trailing comment\n");
    CHECK(spaced.edge_count() == 1);
}

TEST_CASE("parse_graph names the offending line") {
    auto message_of = [](const char* text) {
        try {
            parse_graph(text);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message_of("nope\n") == "line 1: malformed header, expected \"n m\"");
    CHECK(message_of("2 1\n1 3\n").find("line 2") != std::string::npos);
    CHECK(message_of("2 1\n1 1\n").find("self-loop") != std::string::npos);
    CHECK(message_of("3 2\n1 2\n1 2\n").find("duplicate edge") != std::string::npos);
    CHECK(message_of("2 1\n2 1\n").find("u < v") != std::string::npos);
    CHECK(message_of("2 2\n1 2\n").find("declared 2") != std::string::npos);
    CHECK(message_of("2 1\n1 2\n1 2\n").find("more than the declared") != std::string::npos);
}

TEST_CASE("format and parse round-trip") {
    Graph g = random_graph(9, 14, 7);
    Graph back = parse_graph(format_graph(g));
    CHECK(back.edges() == g.edges());
}

TEST_CASE("connected_components") {
    CHECK(connected_components(complete_graph(3)) == std::vector<std::vector<Vertex>>{{0, 1, 2}});
    CHECK(connected_components(graph_of(3, {})) ==
          std::vector<std::vector<Vertex>>{{0}, {1}, {2}});
    CHECK(connected_components(graph_of(4, {{0, 1}, {2, 3}})) ==
          std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}});
}

TEST_CASE("girth") {
    CHECK(girth(cycle_graph(5)) == 5);
    CHECK(girth(random_tree(12, 3)) == std::nullopt);
    CHECK(girth(cube_graph()) == 4);
    CHECK(girth(complete_graph(4)) == 3);
    CHECK(girth(path_graph(6)) == std::nullopt);
}

TEST_CASE("two_coloring") {
    CHECK(is_bipartite(cycle_graph(4)));
    CHECK_FALSE(is_bipartite(cycle_graph(5)));
    auto coloring = two_coloring(cube_graph());
    REQUIRE(coloring.has_value());
    for (auto [u, v] : cube_graph().edges()) CHECK((*coloring)[u] != (*coloring)[v]);
}

TEST_CASE("max_degree") {
    CHECK(max_degree(claw()) == 3);
    CHECK(max_degree(cycle_graph(8)) == 2);
    CHECK(max_degree(graph_of(1, {})) == 0);
}

TEST_CASE("classify_cut basics") {
    Graph c4 = cycle_graph(4);
    CHECK(classify_cut(c4, cut_of(c4, {0, 1})) == CutClass::PerfectMatchingCut);
    CHECK(classify_cut(c4, cut_of(c4, {0, 1, 2, 3})) == CutClass::NotACut);
    CHECK(classify_cut(c4, cut_of(c4, {0, 2})) == CutClass::CutOnly);
    CHECK_THROWS_AS(classify_cut(c4, Cut{{Side::X}}), Error);

    // the empty edge cut of a disconnected graph is a (empty) matching
    Graph two = graph_of(4, {{0, 1}, {2, 3}});
    CHECK(classify_cut(two, cut_of(two, {0, 1})) == CutClass::MatchingCut);
}

TEST_CASE("classify_cut on the cube gadget cut") {
    // black vertices of the first cut: the corner, its two same-side clause
    // vertices and the opposite primed vertex
    Graph cube = cube_graph();
    CHECK(classify_cut(cube, cut_of(cube, {0, 2, 3, 5})) == CutClass::PerfectMatchingCut);
}

TEST_CASE("no bipartition of the claw is a perfect matching cut") {
    Graph g = claw();
    bool saw_matching_cut = false;
    for (int mask = 0; mask < 16; ++mask) {
        Cut cut;
        for (int v = 0; v < 4; ++v) cut.side.push_back(mask >> v & 1 ? Side::Y : Side::X);
        CutClass c = classify_cut(g, cut);
        CHECK(c != CutClass::PerfectMatchingCut);
        if (c == CutClass::MatchingCut) saw_matching_cut = true;
    }
    CHECK(saw_matching_cut);
}

TEST_CASE("disconnected perfect matchings of small graphs") {
    Graph c6 = cycle_graph(6);
    std::vector<Edge> alt1{{0, 1}, {2, 3}, {4, 5}};
    std::vector<Edge> alt2{{1, 2}, {3, 4}, {0, 5}};
    CHECK(is_disconnected_perfect_matching(c6, alt1));
    CHECK(is_disconnected_perfect_matching(c6, alt2));

    std::vector<Edge> not_matching{{0, 1}, {1, 2}};
    CHECK_FALSE(is_disconnected_perfect_matching(c6, not_matching));

    Graph k2 = path_graph(2);
    std::vector<Edge> m{{0, 1}};
    CHECK(is_disconnected_perfect_matching(k2, m));

    std::vector<Edge> bogus{{0, 3}};
    CHECK_THROWS_AS(is_disconnected_perfect_matching(c6, bogus), Error);
}

TEST_CASE("biconnected blocks") {
    SUBCASE("triangle with a pendant") {
        Graph g = graph_of(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
        auto bd = biconnected_blocks(g);
        REQUIRE(bd.blocks.size() == 2);
        CHECK(bd.blocks[0] == std::vector<Vertex>{0, 1, 2});
        CHECK(bd.blocks[1] == std::vector<Vertex>{2, 3});
        CHECK(bd.nontrivial[0]);
        CHECK_FALSE(bd.nontrivial[1]);
        CHECK(bd.cut_vertices == std::vector<Vertex>{2});
    }
    SUBCASE("trees have only edge blocks") {
        Graph g = random_tree(10, 5);
        auto bd = biconnected_blocks(g);
        CHECK(bd.blocks.size() == 9);
        for (size_t b = 0; b < bd.blocks.size(); ++b) CHECK_FALSE(bd.nontrivial[b]);
        for (Vertex v = 0; v < 10; ++v) {
            bool internal = g.degree(v) >= 2;
            bool is_cut = std::binary_search(bd.cut_vertices.begin(), bd.cut_vertices.end(), v);
            CHECK(internal == is_cut);
        }
    }
    SUBCASE("a cycle is one block") {
        auto bd = biconnected_blocks(cycle_graph(5));
        REQUIRE(bd.blocks.size() == 1);
        CHECK(bd.blocks[0].size() == 5);
        CHECK(bd.cut_vertices.empty());
    }
    SUBCASE("block edges partition the edge set") {
        for (uint64_t seed = 0; seed < 20; ++seed) {
            Graph g = random_graph(10, 14, seed);
            auto bd = biconnected_blocks(g);
            size_t total = 0;
            std::set<Edge> seen;
            for (const auto& edges : bd.block_edges) {
                total += edges.size();
                seen.insert(edges.begin(), edges.end());
            }
            CHECK(total == static_cast<size_t>(g.edge_count()));
            CHECK(seen.size() == total);
        }
    }
}

namespace {

// Independent route: an edge is in a non-trivial block iff it lies on a
// cycle, i.e. iff its endpoints stay connected without it.
std::vector<Edge> non_bridge_edges(const Graph& g) {
    std::vector<Edge> out;
    for (auto [u, v] : g.edges()) {
        std::vector<bool> visited(g.vertex_count(), false);
        std::vector<Vertex> queue{u};
        visited[u] = true;
        while (!queue.empty()) {
            Vertex a = queue.back();
            queue.pop_back();
            for (Vertex b : g.neighbors(a)) {
                if ((a == u && b == v) || (a == v && b == u)) continue;
                if (!visited[b]) {
                    visited[b] = true;
                    queue.push_back(b);
                }
            }
        }
        if (visited[v]) out.emplace_back(u, v);
    }
    return out;
}

}  // namespace

TEST_CASE("triangle-saturated components") {
    CHECK(triangle_saturated_components(random_tree(8, 11)).components.empty());

    Graph tp = graph_of(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    auto ts = triangle_saturated_components(tp);
    CHECK(ts.edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(ts.components == std::vector<std::vector<Vertex>>{{0, 1, 2}});

    SUBCASE("two triangle clusters joined by a path") {
        Graph g = graph_of(8, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7}});
        auto both = triangle_saturated_components(g);
        CHECK(both.components == std::vector<std::vector<Vertex>>{{0, 1, 2}, {5, 6, 7}});
        CHECK(both.edges == non_bridge_edges(g));
    }
    SUBCASE("matches the cycle-edge route on random graphs") {
        for (uint64_t seed = 0; seed < 30; ++seed) {
            Graph g = random_graph(9, 11, seed + 100);
            CHECK(triangle_saturated_components(g).edges == non_bridge_edges(g));
        }
    }
}

TEST_CASE("girth is infinite exactly for forests") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = random_graph(8, static_cast<int>(seed % 12), seed);
        int components = static_cast<int>(connected_components(g).size());
        bool forest = g.edge_count() <= g.vertex_count() - components;
        CHECK(girth(g).has_value() == !forest);
    }
}

TEST_CASE("cut class nesting on random cuts") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_graph(8, static_cast<int>(rng.below(20)), rng.next());
        Cut cut;
        for (int v = 0; v < 8; ++v) cut.side.push_back(rng.below(2) ? Side::Y : Side::X);
        CutClass c = classify_cut(g, cut);
        if (c == CutClass::PerfectMatchingCut) {
            // every perfect matching cut is a disconnected perfect matching
            std::vector<Edge> cross;
            for (auto [u, v] : g.edges())
                if (cut.side[u] != cut.side[v]) cross.emplace_back(u, v);
            CHECK(is_disconnected_perfect_matching(g, cross));
            CHECK(g.vertex_count() % 2 == 0);
        }
    }
}
