#pragma once

#include <array>
#include <optional>

#include "branch.hpp"
#include "graph.hpp"

namespace pmc {

// Connected graphs of maximum degree two: a perfect matching cut exists iff
// the graph is a path on an even number of vertices or a cycle on 4k
// vertices.
SolveResult solve_max_deg2(const Graph& g);

// Caterpillar criterion: true with certificate iff the tree is a caterpillar
// whose basic path has at most one leaf per inner vertex and whose maximal
// leafless sub-paths all have even order. Non-caterpillar trees report
// false; they are handled by the pseudo-chordal solver instead. Input must
// be a tree.
SolveResult caterpillar_criterion(const Graph& g);

// Every edge of every non-trivial block lies in a triangle. Returns the
// first violating edge otherwise.
struct PseudoChordalCheck {
    bool pseudo_chordal = false;
    std::optional<Edge> violating_edge;
};
PseudoChordalCheck is_pseudo_chordal(const Graph& g);

// Rooted tree over plain vertices and triangle-saturated supernodes, with
// the two dynamic-programming tables. attach = r(S), the unique vertex of a
// non-root node adjacent to its parent node.
struct SupernodeTree {
    struct Node {
        std::vector<Vertex> vertices;  // sorted
        bool supernode = false;
        int parent = -1;
        Vertex attach = -1;         // r(S); -1 at the root
        Vertex parent_vertex = -1;  // vertex of the parent node it hangs from
        std::vector<int> children;
        bool pmc = false;
        bool m = false;
    };
    std::vector<Node> nodes;
    int root = -1;
    std::vector<int> node_of;  // vertex -> node index
};

// Requires a connected graph. The contraction of the triangle-saturated
// components is a tree for any connected graph.
SupernodeTree build_supernode_tree(const Graph& g);

// Fills the pmc/m tables bottom-up:
//   pmc(S): the subtree graph G_S has a perfect matching cut;
//   m(S):   G_S minus r(S) has one with S \ r(S) on a single side.
void run_supernode_dp(SupernodeTree& tree);

// Bottom-up dynamic programming over the supernode tree; every supernode is
// monochromatic in the reconstructed certificate. Requires connected,
// pseudo-chordal input.
SolveResult solve_pseudo_chordal(const Graph& g);

// The 6-vertex tree obtained from the claw by subdividing two edges once
// each: a degree-3 center with legs of lengths 1, 2 and 2.
struct TWitness {
    Vertex center = -1;
    Vertex leg1_mid = -1, leg1_end = -1;
    Vertex leg2_mid = -1, leg2_end = -1;
    Vertex leaf = -1;

    std::array<Vertex, 6> vertices() const {
        return {leg1_end, leg1_mid, center, leg2_mid, leg2_end, leaf};
    }
};

// True iff the six vertices are distinct and induce exactly the five edges
// of the subdivided claw.
bool validate_t_witness(const Graph& g, const TWitness& w);

// Engaged result = an induced copy was found (the graph is not T-free).
std::optional<TWitness> find_induced_t(const Graph& g);
inline bool is_t_free(const Graph& g) { return !find_induced_t(g).has_value(); }

class TFreeViolation : public Error {
public:
    explicit TFreeViolation(TWitness w);
    TWitness witness;
};

// Per seed edge, exhausts R1..R8 plus R10; an empty F decides the seed, a
// non-empty F means no separating cut exists on T-free input. If the case
// analysis instead uncovers an induced T, the input violated the contract
// and a TFreeViolation carrying the witness is thrown. Requires a connected
// graph.
SolveResult solve_t_free(const Graph& g);

}  // namespace pmc
