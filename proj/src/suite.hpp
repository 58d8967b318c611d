#pragma once

#include <optional>
#include <string>

#include "branch.hpp"
#include "oracle.hpp"
#include "poly.hpp"

namespace pmc {

enum class Algo { Auto, Oracle, Branch, TFree, PseudoChordal, Deg2 };

std::optional<Algo> algo_from_name(std::string_view name);
std::string_view algo_name(Algo a);

struct SuiteOptions {
    Algo algo = Algo::Auto;
    OracleLimits limits;
    SolverOptions branch;
};

// Solves per connected component with the requested algorithm (or, for
// Auto, the first applicable of deg2, pseudochordal, tfree, branch per
// component) and merges the per-component cuts. Algorithm preconditions are
// checked up front and violations reported as errors.
SolveResult solve_with(const Graph& g, const SuiteOptions& options);

// Which algorithms apply to this graph.
struct Applicability {
    bool oracle = false;
    bool deg2 = false;
    bool pseudo_chordal = false;
    bool t_free = false;
};
Applicability applicable_algorithms(const Graph& g, const OracleLimits& limits);

struct CrossCheckReport {
    struct Entry {
        std::string algorithm;
        bool has_pmc = false;
    };
    std::vector<Entry> entries;
    bool agree = true;
};

// Runs every applicable algorithm (branch always included) and compares the
// decisions.
CrossCheckReport cross_check(const Graph& g, const SuiteOptions& options);

// SolveResult as a JSON document: has_pmc, algorithm, certificate (1-based
// X/Y vertex lists), stats. Deterministic field order.
std::string solve_result_to_json(const SolveResult& res, std::optional<double> wall_ms = {});
std::string stats_to_json(const SolverStats& stats);

}  // namespace pmc
