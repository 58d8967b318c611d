#pragma once

#include <cstdint>

#include "graph.hpp"

namespace pmc {

Graph path_graph(int n);
Graph cycle_graph(int n);

// The 3-cube Q3 in the fixed template order used by the clause gadgets:
// vertex 0 adjacent to 1,2,3; vertex 4 adjacent to 5,6,7; corner k in
// {1,2,3} adjacent to the two vertices of {5,6,7} other than k+4.
Graph cube_graph();

Graph complete_graph(int n);
Graph star_graph(int leaves);

// Deterministic RNG helpers. std::uniform_int_distribution is
// implementation-defined, so bounded draws go through this instead.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next();
    // uniform in [0, bound)
    uint64_t below(uint64_t bound);

private:
    uint64_t state_;
};

// Random graph with exactly m distinct edges.
Graph random_graph(int n, int m, uint64_t seed);

// Random connected graph: a random spanning tree plus extra random edges
// up to m total (m >= n-1 required).
Graph random_connected_graph(int n, int m, uint64_t seed);

// Uniform-ish random tree (each vertex i >= 1 attaches to a random j < i).
Graph random_tree(int n, uint64_t seed);

}  // namespace pmc
