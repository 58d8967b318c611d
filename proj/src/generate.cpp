#include "generate.hpp"

#include <algorithm>
#include <numeric>

namespace pmc {

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) fail(ErrorKind::InvalidArgument, "cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return Graph::from_edges(n, edges);
}

Graph cube_graph() {
    std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7},
                               {1, 6}, {1, 7}, {2, 5}, {2, 7}, {3, 5}, {3, 6}};
    return Graph::from_edges(8, edges);
}

Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph star_graph(int leaves) {
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, edges);
}

uint64_t Rng::next() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t bound) {
    PMC_CHECK(bound > 0, "Rng::below(0)");
    // Rejection sampling keeps the draw unbiased and deterministic.
    uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

namespace {

std::vector<Edge> all_pairs(int n) {
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    return pairs;
}

void shuffle_edges(std::vector<Edge>& edges, Rng& rng) {
    for (size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.below(i)]);
}

}  // namespace

Graph random_graph(int n, int m, uint64_t seed) {
    auto pairs = all_pairs(n);
    if (m < 0 || m > static_cast<int>(pairs.size()))
        fail(ErrorKind::InvalidArgument, "edge count out of range");
    Rng rng(seed);
    shuffle_edges(pairs, rng);
    pairs.resize(m);
    return Graph::from_edges(n, pairs);
}

Graph random_connected_graph(int n, int m, uint64_t seed) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "need at least one vertex");
    if (m < n - 1) fail(ErrorKind::InvalidArgument, "too few edges for a connected graph");
    Rng rng(seed);
    std::vector<Edge> tree;
    std::vector<bool> in_tree(static_cast<size_t>(n) * n, false);
    for (int i = 1; i < n; ++i) {
        int j = static_cast<int>(rng.below(i));
        tree.push_back(make_edge(i, j));
        in_tree[static_cast<size_t>(i) * n + j] = in_tree[static_cast<size_t>(j) * n + i] = true;
    }
    std::vector<Edge> rest;
    for (const Edge& e : all_pairs(n))
        if (!in_tree[static_cast<size_t>(e.first) * n + e.second]) rest.push_back(e);
    shuffle_edges(rest, rng);
    int extra = m - (n - 1);
    if (extra > static_cast<int>(rest.size()))
        fail(ErrorKind::InvalidArgument, "edge count out of range");
    tree.insert(tree.end(), rest.begin(), rest.begin() + extra);
    return Graph::from_edges(n, tree);
}

Graph random_tree(int n, uint64_t seed) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "need at least one vertex");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back(make_edge(i, static_cast<int>(rng.below(i))));
    return Graph::from_edges(n, edges);
}

}  // namespace pmc
