#pragma once

#include <initializer_list>
#include <set>
#include <vector>

#include "generate.hpp"
#include "graph.hpp"

namespace pmc::test {

inline Graph graph_of(int n, std::initializer_list<Edge> edges) {
    std::vector<Edge> e(edges);
    return Graph::from_edges(n, e);
}

inline Cut cut_of(const Graph& g, std::initializer_list<Vertex> x_side) {
    Cut cut;
    cut.side.assign(g.vertex_count(), Side::Y);
    for (Vertex v : x_side) cut.side[v] = Side::X;
    return cut;
}

// K_{1,3}: center 0, leaves 1..3.
inline Graph claw() { return star_graph(3); }

// All labeled graphs on n vertices, one per edge subset.
inline std::vector<Graph> all_graphs(int n) {
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::vector<Graph> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()); ++mask) {
        std::vector<Edge> edges;
        for (size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) edges.push_back(pairs[i]);
        out.push_back(Graph::from_edges(n, edges));
    }
    return out;
}

// Disjoint union with vertices of b shifted past a.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.vertex_count(), v + a.vertex_count());
    return Graph::from_edges(a.vertex_count() + b.vertex_count(), edges);
}

// The subdivided claw: path 0-1-2-3-4 with leaf 5 on the center 2.
inline Graph t_tree() { return graph_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}}); }

// Basic path 0..k-1 plus leaves[i] extra leaves on each inner vertex.
inline Graph caterpillar_graph(int k, const std::vector<int>& leaves) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
    int next = k;
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < (i < static_cast<int>(leaves.size()) ? leaves[i] : 0); ++c)
            edges.emplace_back(i, next++);
    return Graph::from_edges(next, edges);
}

// Cycle 0..len-1 with an apex vertex over each edge selected by the mask;
// pseudo-chordal iff every edge carries one.
inline Graph decorated_cycle(int len, uint64_t apex_mask) {
    std::vector<Edge> edges;
    int next = len;
    for (int i = 0; i < len; ++i) {
        int j = (i + 1) % len;
        edges.push_back(make_edge(i, j));
        if (apex_mask >> i & 1) {
            edges.push_back(make_edge(i, next));
            edges.push_back(make_edge(j, next));
            ++next;
        }
    }
    return Graph::from_edges(next, edges);
}

// Random connected cubic graph by stub pairing; these resist the reductions
// and drive the search into the branching rules. Empty graph when the
// retries run out (callers skip those).
inline Graph random_cubic(int n, uint64_t seed) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 300; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < 3; ++k) stubs.push_back(v);
        for (size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
        std::vector<Edge> edges;
        std::set<Edge> seen;
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            Edge e = make_edge(stubs[i], stubs[i + 1]);
            if (e.first == e.second || !seen.insert(e).second) {
                ok = false;
                break;
            }
            edges.push_back(e);
        }
        if (!ok) continue;
        Graph g = Graph::from_edges(n, edges);
        if (is_connected(g)) return g;
    }
    return Graph{};
}

// The Petersen graph: 3-regular, girth 5.
inline Graph petersen() {
    return graph_of(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7},
                         {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
}

// Each new vertex attaches to a clique around a random earlier vertex, so
// the reverse order is a perfect elimination order.
inline Graph random_chordal(int n, uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    std::vector<std::vector<Vertex>> nbrs(n);
    auto adjacent = [&](Vertex a, Vertex b) {
        for (Vertex w : nbrs[a])
            if (w == b) return true;
        return false;
    };
    for (Vertex v = 1; v < n; ++v) {
        Vertex a = static_cast<Vertex>(rng.below(v));
        std::vector<Vertex> clique{a};
        for (Vertex w : nbrs[a]) {
            if (rng.below(2) == 0) continue;
            bool ok = true;
            for (Vertex c : clique) ok = ok && (c == w || adjacent(c, w));
            if (ok) clique.push_back(w);
        }
        for (Vertex c : clique) {
            edges.push_back(make_edge(v, c));
            nbrs[v].push_back(c);
            nbrs[c].push_back(v);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace pmc::test
