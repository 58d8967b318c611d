#include "graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace pmc {

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "vertex count must be non-negative");
    Graph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail(ErrorKind::InvalidArgument,
                 "edge endpoint out of range: (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        if (u == v)
            fail(ErrorKind::InvalidArgument, "self-loop at vertex " + std::to_string(u));
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto& nb = g.adj_[v];
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            fail(ErrorKind::InvalidArgument, "duplicate edge at vertex " + std::to_string(v));
    }
    g.m_ = static_cast<int>(edges.size());
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
    fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
}

bool parse_int(std::string_view tok, long& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

Graph parse_graph(std::string_view text) {
    long n = -1, m = -1;
    std::vector<Edge> edges;
    long edges_seen = 0;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        std::vector<std::string_view> toks;
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) toks.push_back(line.substr(i, j - i));
            i = j;
        }
        if (toks.empty() || toks[0][0] == '#') continue;

        if (n < 0) {
            if (toks.size() != 2 || !parse_int(toks[0], n) || !parse_int(toks[1], m) || n < 0 || m < 0)
                parse_fail(line_no, "malformed header, expected \"n m\"");
            edges.reserve(static_cast<size_t>(m));
            continue;
        }
        if (edges_seen >= m) parse_fail(line_no, "more than the declared " + std::to_string(m) + " edges");
        long u, v;
        if (toks.size() != 2 || !parse_int(toks[0], u) || !parse_int(toks[1], v))
            parse_fail(line_no, "malformed edge line, expected \"u v\"");
        if (u < 1 || u > n || v < 1 || v > n)
            parse_fail(line_no, "vertex id out of range [1, " + std::to_string(n) + "]");
        if (u == v) parse_fail(line_no, "self-loop at vertex " + std::to_string(u));
        if (u > v) parse_fail(line_no, "expected u < v");
        Edge e{static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)};
        edges.push_back(e);
        ++edges_seen;
    }
    if (n < 0) fail(ErrorKind::Parse, "missing header line \"n m\"");
    if (edges_seen < m)
        fail(ErrorKind::Parse, "declared " + std::to_string(m) + " edges but found " + std::to_string(edges_seen));

    std::set<Edge> seen;
    for (const Edge& e : edges)
        if (!seen.insert(e).second)
            fail(ErrorKind::Parse, "duplicate edge " + std::to_string(e.first + 1) + " " + std::to_string(e.second + 1));

    return Graph::from_edges(static_cast<int>(n), edges);
}

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

std::vector<Vertex> Cut::vertices_on(Side s) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < static_cast<Vertex>(side.size()); ++v)
        if (side[v] == s) out.push_back(v);
    return out;
}

std::string_view cut_class_name(CutClass c) {
    switch (c) {
        case CutClass::NotACut: return "NOT_A_CUT";
        case CutClass::CutOnly: return "CUT";
        case CutClass::MatchingCut: return "MATCHING_CUT";
        case CutClass::PerfectMatchingCut: return "PERFECT_MATCHING_CUT";
    }
    return "?";
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<Vertex>> comps;
    std::vector<bool> visited(n, false);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (visited[s]) continue;
        std::vector<Vertex> comp;
        queue.assign(1, s);
        visited[s] = true;
        while (!queue.empty()) {
            Vertex v = queue.back();
            queue.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbors(v))
                if (!visited[w]) {
                    visited[w] = true;
                    queue.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) {
    return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

std::optional<int> girth(const Graph& g) {
    const int n = g.vertex_count();
    // Acyclic iff m <= n - #components.
    if (g.edge_count() <= n - static_cast<int>(connected_components(g).size()))
        return std::nullopt;

    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(n), parent(n);
    std::deque<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        dist[s] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            if (2 * dist[u] >= best) break;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    PMC_CHECK(best >= 3 && best <= n, "girth out of range");
    return best;
}

std::optional<std::vector<Side>> two_coloring(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(n, -1);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            Vertex v = queue.back();
            queue.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (color[w] < 0) {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if (color[w] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<Side> sides(n);
    for (Vertex v = 0; v < n; ++v) sides[v] = color[v] == 0 ? Side::X : Side::Y;
    return sides;
}

int max_degree(const Graph& g) {
    int d = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
    return d;
}

CutClass classify_cut(const Graph& g, const Cut& c) {
    const int n = g.vertex_count();
    if (static_cast<int>(c.side.size()) != n)
        fail(ErrorKind::InvalidArgument,
             "cut has " + std::to_string(c.side.size()) + " labels for a graph on " + std::to_string(n) + " vertices");

    int on_x = 0;
    for (Side s : c.side)
        if (s == Side::X) ++on_x;
    if (on_x == 0 || on_x == n) return CutClass::NotACut;

    bool matching = true, perfect = true;
    for (Vertex v = 0; v < n; ++v) {
        int cross = 0;
        for (Vertex w : g.neighbors(v))
            if (c.side[w] != c.side[v]) ++cross;
        if (cross != 1) perfect = false;
        if (cross > 1) matching = false;
    }
    if (perfect) return CutClass::PerfectMatchingCut;
    if (matching) return CutClass::MatchingCut;
    return CutClass::CutOnly;
}

bool is_disconnected_perfect_matching(const Graph& g, std::span<const Edge> matching) {
    const int n = g.vertex_count();
    std::vector<int> matched(n, -1);
    for (const auto& [u, v] : matching) {
        if (u < 0 || u >= n || v < 0 || v >= n || !g.has_edge(u, v))
            fail(ErrorKind::InvalidArgument,
                 "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") not in graph");
        if (matched[u] >= 0 || matched[v] >= 0) return false;  // not a matching
        matched[u] = v;
        matched[v] = u;
    }
    for (Vertex v = 0; v < n; ++v)
        if (matched[v] < 0) return false;  // not perfect

    // Connectivity of g minus the matching.
    if (n <= 1) return false;
    std::vector<bool> visited(n, false);
    std::vector<Vertex> queue{0};
    visited[0] = true;
    int seen = 1;
    while (!queue.empty()) {
        Vertex v = queue.back();
        queue.pop_back();
        for (Vertex w : g.neighbors(v)) {
            if (matched[v] == w) continue;
            if (!visited[w]) {
                visited[w] = true;
                ++seen;
                queue.push_back(w);
            }
        }
    }
    return seen < n;
}

namespace {

// Iterative Tarjan block decomposition with an explicit edge stack.
struct BlockFinder {
    const Graph& g;
    std::vector<int> disc, low;
    std::vector<Edge> edge_stack;
    std::vector<std::vector<Edge>> blocks;
    int timer = 0;

    explicit BlockFinder(const Graph& graph)
        : g(graph), disc(graph.vertex_count(), -1), low(graph.vertex_count(), 0) {}

    void pop_block(const Edge& until) {
        std::vector<Edge> block;
        while (true) {
            Edge e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e);
            if (e == until) break;
        }
        blocks.push_back(std::move(block));
    }

    void run_from(Vertex root) {
        struct Frame {
            Vertex v;
            Vertex parent;
            size_t next = 0;
            int tree_children = 0;
        };
        std::vector<Frame> stack;
        stack.push_back({root, -1});
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto nb = g.neighbors(f.v);
            if (f.next < nb.size()) {
                Vertex w = nb[f.next++];
                if (w == f.parent) continue;
                if (disc[w] < 0) {
                    edge_stack.push_back(make_edge(f.v, w));
                    disc[w] = low[w] = timer++;
                    ++f.tree_children;
                    stack.push_back({w, f.v});
                } else if (disc[w] < disc[f.v]) {
                    edge_stack.push_back(make_edge(f.v, w));
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                stack.pop_back();
                if (!stack.empty()) {
                    Frame& p = stack.back();
                    low[p.v] = std::min(low[p.v], low[done.v]);
                    if (low[done.v] >= disc[p.v]) pop_block(make_edge(p.v, done.v));
                }
            }
        }
    }
};

}  // namespace

BlockDecomposition biconnected_blocks(const Graph& g) {
    const int n = g.vertex_count();
    BlockFinder finder(g);
    for (Vertex v = 0; v < n; ++v)
        if (finder.disc[v] < 0 && g.degree(v) > 0) finder.run_from(v);

    BlockDecomposition out;
    std::vector<int> blocks_at(n, 0);
    for (auto& block : finder.blocks) {
        std::vector<Vertex> verts;
        for (const auto& [u, v] : block) {
            verts.push_back(u);
            verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        for (Vertex v : verts) ++blocks_at[v];
        std::sort(block.begin(), block.end());
        out.block_edges.push_back(std::move(block));
        out.blocks.push_back(std::move(verts));
    }

    // Order blocks by vertex set for deterministic output.
    std::vector<size_t> order(out.blocks.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return out.blocks[a] < out.blocks[b]; });
    BlockDecomposition sorted;
    for (size_t i : order) {
        sorted.blocks.push_back(std::move(out.blocks[i]));
        sorted.block_edges.push_back(std::move(out.block_edges[i]));
        sorted.nontrivial.push_back(sorted.blocks.back().size() >= 3);
    }
    for (Vertex v = 0; v < n; ++v)
        if (blocks_at[v] >= 2) sorted.cut_vertices.push_back(v);
    return sorted;
}

TriangleSaturated triangle_saturated_components(const Graph& g) {
    BlockDecomposition bd = biconnected_blocks(g);
    TriangleSaturated out;
    const int n = g.vertex_count();
    std::vector<bool> touched(n, false);

    // Union-find over vertices touched by non-trivial block edges.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (size_t b = 0; b < bd.blocks.size(); ++b) {
        if (!bd.nontrivial[b]) continue;
        for (const auto& [u, v] : bd.block_edges[b]) {
            out.edges.push_back({u, v});
            parent[find(u)] = find(v);
            touched[u] = touched[v] = true;
        }
    }
    std::sort(out.edges.begin(), out.edges.end());

    std::vector<std::vector<Vertex>> comps;
    std::vector<int> root_index(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        if (!touched[v]) continue;
        int r = find(v);
        if (root_index[r] < 0) {
            root_index[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[root_index[r]].push_back(v);
    }
    out.components = std::move(comps);
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<int> local(g.vertex_count(), -1);
    for (size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (Vertex v : vertices)
        for (Vertex w : g.neighbors(v))
            if (v < w && local[w] >= 0) edges.emplace_back(local[v], local[w]);
    InducedSubgraph out;
    out.graph = Graph::from_edges(static_cast<int>(vertices.size()), edges);
    out.to_parent.assign(vertices.begin(), vertices.end());
    return out;
}

}  // namespace pmc
