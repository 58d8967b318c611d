#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"

namespace pmc {

// Monotone NAE-3SAT instance: every clause is a set of three distinct
// positive variables, satisfied not-all-equal iff non-monochromatic.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;  // 1-based variables, each triple sorted

    int num_clauses() const { return static_cast<int>(clauses.size()); }
};

CnfFormula make_formula(int num_vars, const std::vector<std::array<int, 3>>& clauses);

// DIMACS CNF with positive literals only; every clause must have width 3
// with distinct variables.
CnfFormula parse_cnf(std::string_view text);
std::string format_cnf(const CnfFormula& f);

bool clause_not_all_equal(const std::array<int, 3>& clause, const std::vector<bool>& assignment);
bool is_nae_assignment(const CnfFormula& f, const std::vector<bool>& assignment);

}  // namespace pmc
