#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmc {

enum class ErrorKind {
    Parse,
    InvalidArgument,
    LimitExceeded,
    Precondition,
    Io,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

// Internal invariant check, always on. These guard algorithmic invariants,
// not user input; a failure indicates a solver bug.
#define PMC_CHECK(cond, msg)                                                 \
    do {                                                                     \
        if (!(cond)) ::pmc::fail(::pmc::ErrorKind::Internal, std::string("invariant violated: ") + (msg)); \
    } while (0)

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // stored normalized with first < second

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple undirected graph, immutable after construction. Vertices are dense
// 0..n-1; adjacency lists are sorted.
class Graph {
public:
    Graph() = default;

    // Validates simplicity: ids in range, no self-loops, no duplicates.
    static Graph from_edges(int n, std::span<const Edge> edges);
    static Graph from_edges(int n, const std::vector<Edge>& edges) {
        return from_edges(n, std::span<const Edge>(edges));
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(Vertex u, Vertex v) const;

    // All edges as (u, v) with u < v, in ascending lexicographic order.
    std::vector<Edge> edges() const;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
};

// Edge-list document: header "n m", then m lines "u v" with 1 <= u < v <= n.
// Lines starting with '#' are comments. Errors name the offending line.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

enum class Side : uint8_t { X = 0, Y = 1 };

inline Side flip(Side s) { return s == Side::X ? Side::Y : Side::X; }
inline char side_char(Side s) { return s == Side::X ? 'X' : 'Y'; }

// A bipartition of the vertex set, candidate certificate for a perfect
// matching cut.
struct Cut {
    std::vector<Side> side;

    Cut() = default;
    explicit Cut(std::vector<Side> s) : side(std::move(s)) {}

    std::vector<Vertex> vertices_on(Side s) const;
    bool operator==(const Cut&) const = default;
};

enum class CutClass : uint8_t {
    NotACut = 0,
    CutOnly = 1,
    MatchingCut = 2,
    PerfectMatchingCut = 3,
};

std::string_view cut_class_name(CutClass c);

// Maximal connected vertex sets, each sorted, ordered by minimum vertex.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

bool is_connected(const Graph& g);

// Length of a shortest cycle; nullopt for forests. BFS from every vertex,
// O(n*m), adequate for desk-scale instances.
std::optional<int> girth(const Graph& g);

// Two-coloring witness if bipartite, nullopt otherwise.
std::optional<std::vector<Side>> two_coloring(const Graph& g);
inline bool is_bipartite(const Graph& g) { return two_coloring(g).has_value(); }

int max_degree(const Graph& g);

// Most specific class of the bipartition: NotACut if a side is empty,
// PerfectMatchingCut if every vertex has exactly one cross neighbor,
// MatchingCut if at most one, CutOnly otherwise. The empty edge cut on a
// disconnected graph classifies as MatchingCut.
CutClass classify_cut(const Graph& g, const Cut& c);

// True iff `matching` is a perfect matching of g whose removal disconnects g.
// Throws if an edge is not in the graph.
bool is_disconnected_perfect_matching(const Graph& g, std::span<const Edge> matching);

struct BlockDecomposition {
    std::vector<std::vector<Vertex>> blocks;      // vertex sets, each sorted
    std::vector<std::vector<Edge>> block_edges;   // parallel to blocks
    std::vector<Vertex> cut_vertices;             // sorted
    std::vector<bool> nontrivial;                 // block has >= 3 vertices
};

// Standard block / cut-vertex decomposition. Every edge belongs to exactly
// one block; isolated vertices belong to none.
BlockDecomposition biconnected_blocks(const Graph& g);

struct TriangleSaturated {
    std::vector<Edge> edges;                      // union of non-trivial block edges
    std::vector<std::vector<Vertex>> components;  // connected components of that subgraph
};

TriangleSaturated triangle_saturated_components(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;  // local id -> parent id
};

// Subgraph induced by `vertices` (must be sorted, distinct, in range);
// local ids follow the given order.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

}  // namespace pmc
