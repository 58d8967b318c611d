#pragma once

#include <array>
#include <optional>
#include <string>

#include "cnf.hpp"
#include "graph.hpp"
#include "oracle.hpp"

namespace pmc {

// Where every formula variable and clause landed in the reduced graph.
// Clause gadgets come first (clause-major, fixed internal template), then
// variable gadgets, so instances are reproducible byte for byte.
struct ReductionMap {
    struct ClauseGadget {
        int base = 0;
        int size = 0;
        std::array<Vertex, 3> clause_vertices{};  // c_j1, c_j2, c_j3
    };
    struct VariableGadget {
        int base = 0;
        int size = 0;
        std::vector<Vertex> vertices;  // one per clause in the girth variant
        Vertex dummy = -1;             // basic variant only
    };

    std::string variant;  // "basic" or "girth"
    int num_vars = 0;
    int num_clauses = 0;
    int h = 0;
    int girth_target = 0;
    std::vector<ClauseGadget> clause_gadgets;
    std::vector<VariableGadget> variable_gadgets;
};

std::string reduction_map_to_json(const ReductionMap& map);  // 1-based vertex ids
ReductionMap reduction_map_from_json(const std::string& text);

struct Reduction {
    Graph graph;
    ReductionMap map;
};

// Cube clause gadgets plus a variable/dummy pair per variable; the output
// has 8m + 2n vertices and is bipartite.
Reduction reduce_basic(const CnfFormula& f);

// Subdivided cubes and variable cycles; bipartite, maximum degree 3, girth
// at least the target. h defaults to the smallest value meeting the girth
// bound min{4m(h+1), 8(h+2)} >= target. Needs at least 3 clauses.
Reduction reduce_girth(const CnfFormula& f, int girth_target, std::optional<int> h_override = {});

// A nae assignment extends to a perfect matching cut: true variables on X,
// the unique gadget completion found by constraint propagation.
Cut lift_assignment(const CnfFormula& f, const Graph& g, const ReductionMap& map,
                    const std::vector<bool>& assignment);

// Reads the assignment back off a perfect matching cut of the reduced graph.
std::vector<bool> extract_assignment(const CnfFormula& f, const Graph& g, const ReductionMap& map,
                                     const Cut& cut);

struct ReductionReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass = true;

    void add(std::string name, bool pass, std::string detail);
};

// Structural claims of the reduction on an already-built instance; exposed
// separately so tampered graphs can be checked too.
ReductionReport check_reduction(const CnfFormula& f, const Graph& g, const ReductionMap& map,
                                const OracleLimits& limits = {});

ReductionReport verify_reduction(const CnfFormula& f, const std::string& variant,
                                 int girth_target = 0, std::optional<int> h_override = {},
                                 const OracleLimits& limits = {});

}  // namespace pmc
