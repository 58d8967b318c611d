#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace pmc {

enum class Label : uint8_t { Free = 0, InA = 1, InB = 2 };

struct SolverStats {
    uint64_t nodes = 0;
    std::map<std::string, uint64_t> rule_counts;
    int max_depth = 0;
    std::optional<Edge> seed_edge;

    void merge(const SolverStats& other);
};

struct SolveResult {
    bool has_pmc = false;
    std::optional<Cut> certificate;
    SolverStats stats;
    std::string algorithm;
};

struct SolverOptions {
    bool enable_r10 = false;  // extra reduction beyond the analyzed rule set
    int threads = 1;
    // Results always report the lowest successful seed edge regardless of
    // thread count; the flag is carried for callers that key output
    // stability (e.g. timing fields) on it.
    bool deterministic = true;
};

// Seeds every rule-count key so emitted stats share one schema.
void init_rule_counts(SolverStats& stats, bool enable_r10);

// The (A, B, F) tri-partition evolved by the reduction and branching rules.
// Vertices only ever leave F. Neighbor counts per label are cached.
class SolverState {
public:
    SolverState(const Graph& g, Vertex a, Vertex b);
    SolverState(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b);

    const Graph& graph() const { return *g_; }
    Label label(Vertex v) const { return label_[v]; }
    int count_a(Vertex v) const { return cnt_a_[v]; }
    int count_b(Vertex v) const { return cnt_b_[v]; }
    int count_f(Vertex v) const { return g_->degree(v) - cnt_a_[v] - cnt_b_[v]; }
    int free_count() const { return free_count_; }

    std::vector<Vertex> members(Label l) const;
    const std::vector<std::string>& trace() const { return trace_; }
    void record(std::string rule) { trace_.push_back(std::move(rule)); }

    // Moves a free vertex out of F. Returns false (state poisoned) when the
    // vertex already sits on the other side.
    bool assign(Vertex v, Label side);

    // Requires F empty; A maps to X, B to Y.
    Cut to_cut() const;

private:
    const Graph* g_ = nullptr;
    std::vector<Label> label_;
    std::vector<int> cnt_a_, cnt_b_;
    int free_count_ = 0;
    std::vector<std::string> trace_;
};

struct ReductionOutcome {
    enum class Kind { Infeasible, Reduced, Exhausted };
    Kind kind;
    std::string reason;  // which R1 bullet fired, for Infeasible
};

// Exhaustively applies R1..R8 (plus R10 when enabled) in preference order.
// Infeasible when an R1 stop condition fires; Reduced when at least one rule
// changed the state; Exhausted when nothing applied. After a non-Infeasible
// return the reduced-state facts are checked.
ReductionOutcome apply_reductions(SolverState& s, SolverStats& stats, bool enable_r10 = false);

struct BranchChoice {
    std::string rule;                  // "B1".."B7"
    std::vector<SolverState> children;
    std::vector<int> decreases;        // per surviving child, actual |F| decrease
    std::vector<int> minimums;         // per surviving child, proven lower bound
    int conflicted_children = 0;       // children whose forced moves clashed; pruned as infeasible
};

// First applicable branching rule (A-side scanned before the symmetric
// B-side, candidates in ascending vertex order). Requires that no reduction
// applies. Returns nullopt when no vertex of A or B has a free neighbor,
// which on a connected graph means F is empty.
std::optional<BranchChoice> select_branch(const SolverState& s, SolverStats& stats);

// Requires F empty: G has a perfect matching cut separating A and B iff
// (A, B) is one.
struct TerminalAnswer {
    bool is_pmc = false;
    Cut cut;
};
TerminalAnswer terminal_check(const SolverState& s);

// Decides whether g has a perfect matching cut (X, Y) with a in X and b in Y.
// ab must be an edge.
SolveResult solve_from_seed(const Graph& g, Vertex a, Vertex b, const SolverOptions& options = {});

// The exact solver: per connected component, runs the branching algorithm
// from every seed edge; handles odd orders and disconnected inputs.
SolveResult solve_pmc(const Graph& g, const SolverOptions& options = {});

struct BranchVector {
    std::vector<int> decreases;
};

// The unique positive root of x^t = sum_i x^(t - t_i), t = max t_i, located
// in (1, r] by bracketed bisection to +-tol.
double branching_factor(const BranchVector& v, double tol);

// Worst-case branching factor of every rule over its admissible parameter
// space, using the proven minimum decreases. The overall maximum is B3's
// tau(4, 2).
std::map<std::string, double> certify_branching_factors(double tol = 1e-9);

}  // namespace pmc
