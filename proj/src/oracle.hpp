#pragma once

#include <optional>

#include "cnf.hpp"
#include "graph.hpp"

namespace pmc {

struct OracleLimits {
    int max_vertices_pmc = 24;
    int max_variables_nae = 24;
};

// All perfect matching cuts, canonicalized so vertex 0 is on side X, in
// lexicographic order of the side vector (X before Y). Exhaustive by
// definition check; refuses graphs above the limit.
//
// Enumeration runs per connected component (a graph has a perfect matching
// cut iff every component has one) and composes component cuts, which is
// exact and much cheaper than 2^n over the whole vertex set.
std::vector<Cut> enumerate_pmcs(const Graph& g, const OracleLimits& limits = {});

// Early-exit variant; witness is the first element of enumerate_pmcs.
struct OracleAnswer {
    bool has_pmc = false;
    std::optional<Cut> witness;
};
OracleAnswer has_pmc_oracle(const Graph& g, const OracleLimits& limits = {});

// Brute-force not-all-equal satisfiability; witness is the
// lexicographically first nae assignment (variable 1 most significant,
// false before true).
struct NaeAnswer {
    bool satisfiable = false;
    std::optional<std::vector<bool>> witness;
};
NaeAnswer nae_brute(const CnfFormula& f, const OracleLimits& limits = {});

}  // namespace pmc
