#include "cnf.hpp"

#include <algorithm>
#include <sstream>

namespace pmc {

CnfFormula make_formula(int num_vars, const std::vector<std::array<int, 3>>& clauses) {
    if (num_vars < 1) fail(ErrorKind::InvalidArgument, "formula needs at least one variable");
    CnfFormula f;
    f.num_vars = num_vars;
    for (auto clause : clauses) {
        std::sort(clause.begin(), clause.end());
        for (int v : clause)
            if (v < 1 || v > num_vars)
                fail(ErrorKind::InvalidArgument, "variable " + std::to_string(v) + " out of range");
        if (clause[0] == clause[1] || clause[1] == clause[2])
            fail(ErrorKind::InvalidArgument, "clause variables must be distinct");
        f.clauses.push_back(clause);
    }
    return f;
}

CnfFormula parse_cnf(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    long num_vars = -1, num_clauses = -1;

    // Header: comment lines "c ...", then "p cnf <vars> <clauses>".
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first != "p") fail(ErrorKind::Parse, "expected \"p cnf <vars> <clauses>\" header");
        std::string fmt;
        if (!(ls >> fmt >> num_vars >> num_clauses) || fmt != "cnf" || num_vars < 1 || num_clauses < 0)
            fail(ErrorKind::Parse, "malformed problem line");
        break;
    }
    if (num_vars < 0) fail(ErrorKind::Parse, "missing problem line");

    std::vector<std::array<int, 3>> clauses;
    std::vector<int> current;
    long lit;
    while (in >> tok) {
        if (tok == "c") {
            std::getline(in, line);
            continue;
        }
        try {
            lit = std::stol(tok);
        } catch (...) {
            fail(ErrorKind::Parse, "bad token \"" + tok + "\"");
        }
        if (lit == 0) {
            if (current.size() != 3)
                fail(ErrorKind::Parse, "clause " + std::to_string(clauses.size() + 1) +
                                           " has width " + std::to_string(current.size()) +
                                           ", reduction handles width-3 clauses only");
            std::array<int, 3> c{current[0], current[1], current[2]};
            std::sort(c.begin(), c.end());
            if (c[0] == c[1] || c[1] == c[2])
                fail(ErrorKind::Parse,
                     "clause " + std::to_string(clauses.size() + 1) + " repeats a variable");
            clauses.push_back(c);
            current.clear();
            continue;
        }
        if (lit < 0)
            fail(ErrorKind::Parse, "negative literal " + std::to_string(lit) +
                                       ": reduction handles monotone formulas only");
        if (lit > num_vars)
            fail(ErrorKind::Parse, "variable " + std::to_string(lit) + " out of range");
        current.push_back(static_cast<int>(lit));
    }
    if (!current.empty()) fail(ErrorKind::Parse, "unterminated clause (missing 0)");
    if (static_cast<long>(clauses.size()) != num_clauses)
        fail(ErrorKind::Parse, "declared " + std::to_string(num_clauses) + " clauses but found " +
                                   std::to_string(clauses.size()));
    return make_formula(static_cast<int>(num_vars), clauses);
}

std::string format_cnf(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.num_clauses() << '\n';
    for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

bool clause_not_all_equal(const std::array<int, 3>& clause, const std::vector<bool>& assignment) {
    bool a = assignment[clause[0] - 1];
    bool b = assignment[clause[1] - 1];
    bool c = assignment[clause[2] - 1];
    return !(a == b && b == c);
}

bool is_nae_assignment(const CnfFormula& f, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != f.num_vars)
        fail(ErrorKind::InvalidArgument, "assignment length mismatch");
    for (const auto& c : f.clauses)
        if (!clause_not_all_equal(c, assignment)) return false;
    return true;
}

}  // namespace pmc
