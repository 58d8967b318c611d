#include "branch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace pmc {

void SolverStats::merge(const SolverStats& other) {
    nodes += other.nodes;
    for (const auto& [k, v] : other.rule_counts) rule_counts[k] += v;
    max_depth = std::max(max_depth, other.max_depth);
}

namespace {

const char* const kRuleKeys[] = {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8",
                                 "B1", "B2", "B3", "B4", "B5", "B6", "B7"};

}  // namespace

void init_rule_counts(SolverStats& stats, bool enable_r10) {
    for (const char* k : kRuleKeys) stats.rule_counts.emplace(k, 0);
    if (enable_r10) stats.rule_counts.emplace("R10", 0);
}

namespace {

// Scratch counter with timestamp reset, shared per thread.
struct Scratch {
    std::vector<int> val;
    std::vector<uint32_t> stamp;
    uint32_t cur = 0;

    void begin(size_t n) {
        if (val.size() < n) {
            val.resize(n, 0);
            stamp.resize(n, 0);
        }
        ++cur;
    }
    int bump(int i) {
        if (stamp[i] != cur) {
            stamp[i] = cur;
            val[i] = 0;
        }
        return ++val[i];
    }
    int get(int i) const { return stamp[i] == cur ? val[i] : 0; }
};

thread_local Scratch scratch;

}  // namespace

SolverState::SolverState(const Graph& g, Vertex a, Vertex b)
    : SolverState(g, std::vector<Vertex>{a}, std::vector<Vertex>{b}) {}

SolverState::SolverState(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b)
    : g_(&g),
      label_(g.vertex_count(), Label::Free),
      cnt_a_(g.vertex_count(), 0),
      cnt_b_(g.vertex_count(), 0),
      free_count_(g.vertex_count()) {
    for (Vertex v : a) {
        if (v < 0 || v >= g.vertex_count()) fail(ErrorKind::InvalidArgument, "seed vertex out of range");
        PMC_CHECK(assign(v, Label::InA), "seed sets overlap");
    }
    for (Vertex v : b) {
        if (v < 0 || v >= g.vertex_count()) fail(ErrorKind::InvalidArgument, "seed vertex out of range");
        PMC_CHECK(assign(v, Label::InB), "seed sets overlap");
    }
}

std::vector<Vertex> SolverState::members(Label l) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < static_cast<Vertex>(label_.size()); ++v)
        if (label_[v] == l) out.push_back(v);
    return out;
}

bool SolverState::assign(Vertex v, Label side) {
    PMC_CHECK(side != Label::Free, "cannot move a vertex back to F");
    if (label_[v] == side) return true;
    if (label_[v] != Label::Free) return false;  // clash between forced moves
    label_[v] = side;
    --free_count_;
    for (Vertex w : g_->neighbors(v)) {
        if (side == Label::InA)
            ++cnt_a_[w];
        else
            ++cnt_b_[w];
    }
    return true;
}

Cut SolverState::to_cut() const {
    PMC_CHECK(free_count_ == 0, "to_cut with free vertices left");
    Cut cut;
    cut.side.resize(label_.size());
    for (size_t v = 0; v < label_.size(); ++v)
        cut.side[v] = label_[v] == Label::InA ? Side::X : Side::Y;
    return cut;
}

namespace {

Label opposite(Label l) { return l == Label::InA ? Label::InB : Label::InA; }

std::vector<Vertex> free_neighbors(const SolverState& s, Vertex v) {
    std::vector<Vertex> out;
    for (Vertex w : s.graph().neighbors(v))
        if (s.label(w) == Label::Free) out.push_back(w);
    return out;
}

// The unique neighbor of free vertex w on fixed side `side` (caller ensures
// there is exactly one after R2).
Vertex unique_fixed_neighbor(const SolverState& s, Vertex w, Label side) {
    Vertex found = -1;
    for (Vertex z : s.graph().neighbors(w))
        if (s.label(z) == side) {
            PMC_CHECK(found < 0, "free vertex with two fixed neighbors on one side after R2");
            found = z;
        }
    PMC_CHECK(found >= 0, "expected a fixed neighbor");
    return found;
}

// ---------------------------------------------------------------------------
// Reduction rules R1..R8 (+R10), each applied at its first candidate in
// ascending vertex order, A-side variants before B-side.
// ---------------------------------------------------------------------------

// R1 stop conditions, in bullet order. The last bullet is guarded by the
// hypotheses of its safeness proof (x without B-neighbors, y without
// A-neighbors): unguarded it can fire on transient states, reachable before
// R4 has cleared the A-B edges, that still admit a separating cut.
std::optional<std::string> r1_stop(const SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();

    for (Vertex v = 0; v < n; ++v) {
        if (s.label(v) == Label::InA && s.count_b(v) >= 2)
            return "vertex in A with two B-neighbors";
        if (s.label(v) == Label::InB && s.count_a(v) >= 2)
            return "vertex in B with two A-neighbors";
    }
    for (Vertex v = 0; v < n; ++v)
        if (s.label(v) == Label::Free && s.count_a(v) >= 2 && s.count_b(v) >= 2)
            return "free vertex with two A-neighbors and two B-neighbors";
    for (Vertex x = 0; x < n; ++x) {
        if (s.label(x) != Label::InA || s.count_b(x) == 0) continue;
        for (Vertex y : g.neighbors(x)) {
            if (s.label(y) != Label::InB) continue;
            for (Vertex w : g.neighbors(x))
                if (s.label(w) == Label::Free && g.has_edge(w, y))
                    return "A-B edge with a common free neighbor";
        }
    }
    for (Vertex x = 0; x < n; ++x) {
        if (s.label(x) != Label::InA || s.count_f(x) < 3) continue;
        scratch.begin(n);
        for (Vertex w : g.neighbors(x)) {
            if (s.label(w) != Label::Free) continue;
            for (Vertex y : g.neighbors(w))
                if (s.label(y) == Label::InB && scratch.bump(y) >= 3)
                    return "a vertex in A and a vertex in B with three common free neighbors";
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (s.label(v) == Label::InA && s.count_b(v) == 0 && s.count_f(v) == 0)
            return "vertex in A with no neighbor in B or F";
        if (s.label(v) == Label::InB && s.count_a(v) == 0 && s.count_f(v) == 0)
            return "vertex in B with no neighbor in A or F";
    }
    for (Vertex x = 0; x < n; ++x) {
        if (s.label(x) != Label::InA || s.count_f(x) != 1 || s.count_b(x) != 0) continue;
        Vertex v = free_neighbors(s, x)[0];
        for (Vertex y : g.neighbors(v))
            if (s.label(y) == Label::InB && s.count_f(y) == 1 && s.count_a(y) == 0)
                return "x in A and y in B with the same single free neighbor";
    }
    return std::nullopt;
}

bool apply_r2(SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Vertex v = 0; v < n; ++v)
        if (s.label(v) == Label::Free && s.count_a(v) >= 2) return s.assign(v, Label::InA);
    for (Vertex v = 0; v < n; ++v)
        if (s.label(v) == Label::Free && s.count_b(v) >= 2) return s.assign(v, Label::InB);

    // second item: v in F sharing three free neighbors with a fixed vertex
    for (Label side : {Label::InA, Label::InB}) {
        for (Vertex v = 0; v < n; ++v) {
            if (s.label(v) != Label::Free || s.count_f(v) < 3) continue;
            scratch.begin(n);
            Vertex z_hit = -1;
            for (Vertex w : g.neighbors(v)) {
                if (s.label(w) != Label::Free) continue;
                for (Vertex z : g.neighbors(w))
                    if (s.label(z) == side && scratch.bump(z) >= 3 && (z_hit < 0 || z < z_hit))
                        z_hit = z;
            }
            if (z_hit < 0) continue;
            bool ok = s.assign(v, side);
            for (Vertex w : free_neighbors(s, v))
                if (g.has_edge(w, z_hit)) ok = ok && s.assign(w, side);
            PMC_CHECK(ok, "R2 moved a vertex already fixed on the other side");
            return true;
        }
    }
    return false;
}

bool apply_r3(SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Label side : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            if (s.label(x) != side || s.count_f(x) < 2) continue;
            auto fn = free_neighbors(s, x);
            for (size_t i = 0; i < fn.size(); ++i)
                for (size_t j = i + 1; j < fn.size(); ++j)
                    if (g.has_edge(fn[i], fn[j])) {
                        PMC_CHECK(s.assign(fn[i], side) && s.assign(fn[j], side), "R3 clash");
                        return true;
                    }
        }
    }
    return false;
}

bool apply_r4(SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Vertex x = 0; x < n; ++x) {
        if (s.label(x) != Label::InA || s.count_b(x) == 0) continue;
        for (Vertex y : g.neighbors(x)) {
            if (s.label(y) != Label::InB) continue;
            if (s.count_f(x) == 0 && s.count_f(y) == 0) continue;
            auto fx = free_neighbors(s, x);
            auto fy = free_neighbors(s, y);
            bool ok = true;
            for (Vertex w : fx) ok = ok && s.assign(w, Label::InA);
            for (Vertex w : fy) ok = ok && s.assign(w, Label::InB);
            PMC_CHECK(ok, "R4 clash: common free neighbor should have stopped in R1");
            return true;
        }
    }
    return false;
}

bool apply_r5(SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Vertex u = 0; u < n; ++u) {
        if (s.label(u) != Label::Free || g.degree(u) != 2) continue;
        if (s.count_a(u) != 1 || s.count_b(u) != 1) continue;
        auto nu = g.neighbors(u);
        for (Vertex v = u + 1; v < n; ++v) {
            if (s.label(v) != Label::Free || g.degree(v) != 2) continue;
            auto nv = g.neighbors(v);
            if (nu[0] == nv[0] && nu[1] == nv[1]) {
                PMC_CHECK(s.assign(u, Label::InA) && s.assign(v, Label::InB), "R5 clash");
                return true;
            }
        }
    }
    return false;
}

bool apply_r6(SolverState& s) {
    const int n = s.graph().vertex_count();
    for (Label side : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            if (s.label(x) != side || s.count_f(x) != 1) continue;
            Vertex v = free_neighbors(s, x)[0];
            PMC_CHECK(s.assign(v, opposite(side)), "R6 clash");
            return true;
        }
    }
    return false;
}

bool apply_r7(SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    // degree-1 free neighbor
    for (Label side : {Label::InA, Label::InB}) {
        for (Vertex z = 0; z < n; ++z) {
            if (s.label(z) != side) continue;
            for (Vertex v : g.neighbors(z))
                if (s.label(v) == Label::Free && g.degree(v) == 1) {
                    PMC_CHECK(s.assign(v, opposite(side)), "R7 clash");
                    return true;
                }
        }
    }
    // degree-2 free neighbor whose other neighbor is free
    for (Label side : {Label::InA, Label::InB}) {
        for (Vertex z = 0; z < n; ++z) {
            if (s.label(z) != side) continue;
            for (Vertex v : g.neighbors(z)) {
                if (s.label(v) != Label::Free || g.degree(v) != 2) continue;
                auto nv = g.neighbors(v);
                Vertex w = nv[0] == z ? nv[1] : nv[0];
                if (s.label(w) == Label::Free) {
                    PMC_CHECK(s.assign(w, opposite(side)), "R7 clash");
                    return true;
                }
            }
        }
    }
    return false;
}

bool apply_r8(SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Vertex x = 0; x < n; ++x) {
        if (s.label(x) != Label::InA || s.count_f(x) == 0) continue;
        scratch.begin(n);
        std::vector<Vertex> candidates;
        for (Vertex w : g.neighbors(x)) {
            if (s.label(w) != Label::Free) continue;
            for (Vertex y : g.neighbors(w))
                if (s.label(y) == Label::InB && scratch.bump(y) == 1) candidates.push_back(y);
        }
        std::sort(candidates.begin(), candidates.end());
        for (Vertex y : candidates) {
            if (scratch.get(y) != 2) continue;
            if (s.count_f(x) < 3 && s.count_f(y) < 3) continue;
            auto fx = free_neighbors(s, x);
            auto fy = free_neighbors(s, y);
            bool ok = true;
            for (Vertex w : fx)
                if (!g.has_edge(w, y)) ok = ok && s.assign(w, Label::InA);
            for (Vertex w : fy)
                if (!g.has_edge(w, x)) ok = ok && s.assign(w, Label::InB);
            PMC_CHECK(ok, "R8 clash");
            return true;
        }
    }
    return false;
}

bool apply_r10(SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Label side : {Label::InA, Label::InB}) {
        for (Vertex u = 0; u < n; ++u) {
            if (s.label(u) != Label::Free) continue;
            if ((side == Label::InA ? s.count_a(u) : s.count_b(u)) == 0) continue;
            if (s.count_f(u) < 2) continue;
            std::vector<Vertex> partners;
            for (Vertex z : g.neighbors(u)) {
                if (s.label(z) != side) continue;
                for (Vertex v : g.neighbors(z))
                    if (v != u && s.label(v) == Label::Free) partners.push_back(v);
            }
            std::sort(partners.begin(), partners.end());
            partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
            for (Vertex v : partners) {
                int common = 0;
                for (Vertex w : g.neighbors(u))
                    if (s.label(w) == Label::Free && g.has_edge(w, v)) ++common;
                if (common >= 2) {
                    PMC_CHECK(s.assign(u, side) && s.assign(v, side), "R10 clash");
                    return true;
                }
            }
        }
    }
    return false;
}

// Facts that hold whenever no reduction applies.
void check_reduced_facts(const SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Vertex v = 0; v < n; ++v) {
        switch (s.label(v)) {
            case Label::InA:
                PMC_CHECK(s.count_b(v) <= 1, "reduced fact: E(A,B) is a matching");
                PMC_CHECK(s.count_b(v) == 0 || s.count_f(v) == 0,
                          "reduced fact: matched A-vertex keeps free neighbors");
                break;
            case Label::InB:
                PMC_CHECK(s.count_a(v) <= 1, "reduced fact: E(A,B) is a matching");
                PMC_CHECK(s.count_a(v) == 0 || s.count_f(v) == 0,
                          "reduced fact: matched B-vertex keeps free neighbors");
                break;
            case Label::Free:
                PMC_CHECK(s.count_a(v) <= 1 && s.count_b(v) <= 1,
                          "reduced fact: free vertex with two fixed neighbors on one side");
                break;
        }
    }
    for (Vertex x = 0; x < n; ++x) {
        if (s.label(x) == Label::Free) continue;
        auto fn = free_neighbors(s, x);
        for (size_t i = 0; i < fn.size(); ++i)
            for (size_t j = i + 1; j < fn.size(); ++j)
                PMC_CHECK(!g.has_edge(fn[i], fn[j]), "reduced fact: free neighborhood independent");
        if (s.label(x) == Label::InA) {
            scratch.begin(n);
            for (Vertex w : fn)
                for (Vertex y : g.neighbors(w))
                    if (s.label(y) == Label::InB)
                        PMC_CHECK(scratch.bump(y) <= 2, "reduced fact: at most two common free neighbors");
        }
    }
}

}  // namespace

ReductionOutcome apply_reductions(SolverState& s, SolverStats& stats, bool enable_r10) {
    bool any = false;
    while (true) {
        if (auto reason = r1_stop(s)) {
            ++stats.rule_counts["R1"];
            s.record("R1");
            return {ReductionOutcome::Kind::Infeasible, *reason};
        }
        const char* fired = nullptr;
        if (apply_r2(s)) fired = "R2";
        else if (apply_r3(s)) fired = "R3";
        else if (apply_r4(s)) fired = "R4";
        else if (apply_r5(s)) fired = "R5";
        else if (apply_r6(s)) fired = "R6";
        else if (apply_r7(s)) fired = "R7";
        else if (apply_r8(s)) fired = "R8";
        else if (enable_r10 && apply_r10(s)) fired = "R10";
        if (!fired) break;
        any = true;
        ++stats.rule_counts[fired];
        s.record(fired);
    }
    check_reduced_facts(s);
    return {any ? ReductionOutcome::Kind::Reduced : ReductionOutcome::Kind::Exhausted, ""};
}

namespace {

struct ChildSpec {
    std::vector<Vertex> to_a, to_b;
    int minimum;
};

void realize_children(const SolverState& parent, const std::string& rule,
                      const std::vector<ChildSpec>& specs, BranchChoice& out) {
    out.rule = rule;
    for (const auto& spec : specs) {
        SolverState child = parent;
        bool ok = true;
        for (Vertex v : spec.to_a) ok = ok && child.assign(v, Label::InA);
        for (Vertex v : spec.to_b) ok = ok && child.assign(v, Label::InB);
        if (!ok) {
            // Forced moves clash, so this alternative admits no separating
            // cut; prune it here.
            ++out.conflicted_children;
            continue;
        }
        int decrease = parent.free_count() - child.free_count();
        PMC_CHECK(decrease >= spec.minimum, rule + ": child measure decrease below proven bound");
        child.record(rule);
        out.children.push_back(std::move(child));
        out.decreases.push_back(decrease);
        out.minimums.push_back(spec.minimum);
    }
}

// Free neighborhood of a fixed vertex split by whether the free vertex has a
// neighbor on the opposite fixed side.
struct FreeShape {
    std::vector<Vertex> plain;         // no neighbor on the opposite side
    std::vector<Vertex> crossed;       // exactly one neighbor there
    std::vector<Vertex> cross_fixed;   // that neighbor, parallel to `crossed`
};

FreeShape shape_of(const SolverState& s, Vertex x, Label own) {
    FreeShape shape;
    Label opp = opposite(own);
    for (Vertex w : free_neighbors(s, x)) {
        int cnt = opp == Label::InB ? s.count_b(w) : s.count_a(w);
        PMC_CHECK(cnt <= 1, "R2 exhausted: free vertex has at most one fixed neighbor per side");
        if (cnt == 0) {
            shape.plain.push_back(w);
        } else {
            shape.crossed.push_back(w);
            shape.cross_fixed.push_back(unique_fixed_neighbor(s, w, opp));
        }
    }
    return shape;
}

std::vector<Vertex> minus(std::vector<Vertex> set, Vertex drop) {
    set.erase(std::remove(set.begin(), set.end(), drop), set.end());
    return set;
}

void append(std::vector<Vertex>& dst, const std::vector<Vertex>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

std::optional<BranchChoice> try_b1(const SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Vertex x = 0; x < n; ++x) {
        if (s.label(x) != Label::InA || s.count_f(x) == 0) continue;
        scratch.begin(n);
        std::vector<Vertex> candidates;
        for (Vertex w : g.neighbors(x)) {
            if (s.label(w) != Label::Free) continue;
            for (Vertex y : g.neighbors(w))
                if (s.label(y) == Label::InB && scratch.bump(y) == 1) candidates.push_back(y);
        }
        std::sort(candidates.begin(), candidates.end());
        for (Vertex y : candidates) {
            if (scratch.get(y) != 2) continue;
            // R8 exhausted forces N(x) cap F = N(y) cap F = {u, v}.
            PMC_CHECK(s.count_f(x) == 2 && s.count_f(y) == 2, "B1 after R8: both free neighborhoods are the pair");
            auto pair_uv = free_neighbors(s, x);
            Vertex u = pair_uv[0], v = pair_uv[1];
            PMC_CHECK(g.has_edge(u, y) && g.has_edge(v, y), "B1 pair adjacency");
            PMC_CHECK(!g.has_edge(u, v), "B1 after R3: pair is independent");
            std::vector<Vertex> closed_u{u}, closed_v{v};
            append(closed_u, free_neighbors(s, u));
            append(closed_v, free_neighbors(s, v));
            BranchChoice choice;
            realize_children(s, "B1",
                             {{closed_u, closed_v, 3}, {closed_v, closed_u, 3}},
                             choice);
            return choice;
        }
    }
    return std::nullopt;
}

std::optional<BranchChoice> try_b2(const SolverState& s) {
    const int n = s.graph().vertex_count();
    for (Label own : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            if (s.label(x) != own || s.count_f(x) != 2) continue;
            FreeShape shape = shape_of(s, x, own);
            if (shape.crossed.size() != 2) continue;
            Vertex u = shape.crossed[0], v = shape.crossed[1];
            Vertex y1 = shape.cross_fixed[0], y2 = shape.cross_fixed[1];
            PMC_CHECK(y1 != y2, "B2 after B1: distinct opposite anchors");
            std::vector<Vertex> n2 = minus(free_neighbors(s, y2), v);
            std::vector<Vertex> n1 = minus(free_neighbors(s, y1), u);
            ChildSpec first, second;
            if (own == Label::InA) {
                first = {{v}, {}, 3};
                first.to_b.push_back(u);
                append(first.to_b, n2);
                second = {{u}, {}, 3};
                second.to_b.push_back(v);
                append(second.to_b, n1);
            } else {
                first = {{}, {v}, 3};
                first.to_a.push_back(u);
                append(first.to_a, n2);
                second = {{}, {u}, 3};
                second.to_a.push_back(v);
                append(second.to_a, n1);
            }
            BranchChoice choice;
            realize_children(s, "B2", {first, second}, choice);
            return choice;
        }
    }
    return std::nullopt;
}

std::optional<BranchChoice> try_b3(const SolverState& s) {
    const int n = s.graph().vertex_count();
    for (Label own : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            if (s.label(x) != own || s.count_f(x) != 2) continue;
            FreeShape shape = shape_of(s, x, own);
            if (shape.plain.size() != 1 || shape.crossed.size() != 1) continue;
            Vertex u = shape.plain[0], v = shape.crossed[0];
            std::vector<Vertex> nu = free_neighbors(s, u);
            ChildSpec first, second;
            if (own == Label::InA) {
                first = {{v}, {u}, 4};
                append(first.to_b, nu);
                second = {{u}, {v}, 2};
            } else {
                first = {{u}, {v}, 4};
                append(first.to_a, nu);
                second = {{v}, {u}, 2};
            }
            BranchChoice choice;
            realize_children(s, "B3", {first, second}, choice);
            return choice;
        }
    }
    return std::nullopt;
}

std::optional<BranchChoice> try_b4(const SolverState& s) {
    const int n = s.graph().vertex_count();
    for (Label own : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            if (s.label(x) != own || s.count_f(x) < 2) continue;
            FreeShape shape = shape_of(s, x, own);
            if (!shape.crossed.empty()) continue;
            const auto& us = shape.plain;
            const int r = static_cast<int>(us.size());
            std::vector<ChildSpec> specs;
            for (Vertex ui : us) {
                ChildSpec spec;
                spec.minimum = r + 2;
                auto& opp_side = own == Label::InA ? spec.to_b : spec.to_a;
                auto& own_side = own == Label::InA ? spec.to_a : spec.to_b;
                opp_side.push_back(ui);
                append(opp_side, free_neighbors(s, ui));
                append(own_side, minus(us, ui));
                specs.push_back(std::move(spec));
            }
            BranchChoice choice;
            realize_children(s, "B4", specs, choice);
            return choice;
        }
    }
    return std::nullopt;
}

std::optional<BranchChoice> try_b5(const SolverState& s) {
    const int n = s.graph().vertex_count();
    for (Label own : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            if (s.label(x) != own || s.count_f(x) < 2) continue;
            FreeShape shape = shape_of(s, x, own);
            const int q = static_cast<int>(shape.crossed.size());
            if (q < 2) continue;
            const int r = s.count_f(x);
            std::vector<Vertex> all = free_neighbors(s, x);
            std::vector<std::vector<Vertex>> nj(q);
            for (int j = 0; j < q; ++j)
                nj[j] = minus(free_neighbors(s, shape.cross_fixed[j]), shape.crossed[j]);

            std::vector<ChildSpec> specs;
            for (Vertex ui : shape.plain) {
                ChildSpec spec;
                spec.minimum = r + 2 * q;
                auto& opp_side = own == Label::InA ? spec.to_b : spec.to_a;
                auto& own_side = own == Label::InA ? spec.to_a : spec.to_b;
                opp_side.push_back(ui);
                append(own_side, minus(all, ui));
                for (int j = 0; j < q; ++j) append(opp_side, nj[j]);
                specs.push_back(std::move(spec));
            }
            for (int j = 0; j < q; ++j) {
                ChildSpec spec;
                spec.minimum = r + 2 * (q - 1);
                auto& opp_side = own == Label::InA ? spec.to_b : spec.to_a;
                auto& own_side = own == Label::InA ? spec.to_a : spec.to_b;
                opp_side.push_back(shape.crossed[j]);
                append(own_side, minus(all, shape.crossed[j]));
                for (int k = 0; k < q; ++k)
                    if (k != j) append(opp_side, nj[k]);
                specs.push_back(std::move(spec));
            }
            BranchChoice choice;
            realize_children(s, "B5", specs, choice);
            return choice;
        }
    }
    return std::nullopt;
}

// Shared scan for B6 and B7: x fixed with r >= 2 plain free neighbors and
// exactly one crossed free neighbor v anchored at y.
struct B67Site {
    Vertex x, v, y;
    std::vector<Vertex> us;  // the plain free neighbors
    std::vector<Vertex> vs;  // N(y) cap F minus v
};

std::optional<B67Site> b67_site(const SolverState& s, Vertex x, Label own) {
    if (s.label(x) != own || s.count_f(x) < 3) return std::nullopt;
    FreeShape shape = shape_of(s, x, own);
    if (shape.crossed.size() != 1 || shape.plain.size() < 2) return std::nullopt;
    B67Site site;
    site.x = x;
    site.v = shape.crossed[0];
    site.y = shape.cross_fixed[0];
    site.us = shape.plain;
    site.vs = minus(free_neighbors(s, site.y), site.v);
    PMC_CHECK(site.vs.size() >= 2, "B6/B7 after B1..B3: anchor keeps two other free neighbors");
    return site;
}

std::optional<BranchChoice> try_b6(const SolverState& s) {
    const Graph& g = s.graph();
    const int n = g.vertex_count();
    for (Label own : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            auto site = b67_site(s, x, own);
            if (!site) continue;
            Vertex hit = -1;
            for (Vertex ui : site->us) {
                int cnt = 0;
                for (Vertex vj : site->vs)
                    if (g.has_edge(ui, vj)) ++cnt;
                if (cnt >= 2) {
                    hit = ui;
                    break;
                }
            }
            if (hit < 0) continue;
            const int r = static_cast<int>(site->us.size());
            const int sc = static_cast<int>(site->vs.size());
            ChildSpec first, second;
            first.minimum = r + sc + 1;
            second.minimum = r + 1;
            auto& f_own = own == Label::InA ? first.to_a : first.to_b;
            auto& f_opp = own == Label::InA ? first.to_b : first.to_a;
            f_own.push_back(site->v);
            append(f_opp, site->vs);
            f_opp.push_back(hit);
            append(f_own, minus(site->us, hit));
            auto& s_own = own == Label::InA ? second.to_a : second.to_b;
            auto& s_opp = own == Label::InA ? second.to_b : second.to_a;
            s_opp.push_back(site->v);
            append(s_own, site->us);
            BranchChoice choice;
            realize_children(s, "B6", {first, second}, choice);
            return choice;
        }
    }
    return std::nullopt;
}

std::optional<BranchChoice> try_b7(const SolverState& s) {
    const int n = s.graph().vertex_count();
    for (Label own : {Label::InA, Label::InB}) {
        for (Vertex x = 0; x < n; ++x) {
            auto site = b67_site(s, x, own);
            if (!site) continue;
            const int r = static_cast<int>(site->us.size());
            const int sc = static_cast<int>(site->vs.size());
            std::vector<ChildSpec> specs;
            for (Vertex ui : site->us) {
                ChildSpec spec;
                spec.minimum = r + sc + 2;
                auto& own_side = own == Label::InA ? spec.to_a : spec.to_b;
                auto& opp_side = own == Label::InA ? spec.to_b : spec.to_a;
                opp_side.push_back(ui);
                append(own_side, minus(site->us, ui));
                own_side.push_back(site->v);
                append(opp_side, free_neighbors(s, ui));
                append(opp_side, site->vs);
                specs.push_back(std::move(spec));
            }
            for (Vertex vj : site->vs) {
                ChildSpec spec;
                spec.minimum = r + sc + 2;
                auto& own_side = own == Label::InA ? spec.to_a : spec.to_b;
                auto& opp_side = own == Label::InA ? spec.to_b : spec.to_a;
                own_side.push_back(vj);
                append(opp_side, minus(site->vs, vj));
                opp_side.push_back(site->v);
                append(own_side, free_neighbors(s, vj));
                append(own_side, site->us);
                specs.push_back(std::move(spec));
            }
            BranchChoice choice;
            realize_children(s, "B7", specs, choice);
            return choice;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<BranchChoice> select_branch(const SolverState& s, SolverStats& stats) {
    std::optional<BranchChoice> choice;
    if ((choice = try_b1(s)) || (choice = try_b2(s)) || (choice = try_b3(s)) ||
        (choice = try_b4(s)) || (choice = try_b5(s)) || (choice = try_b6(s)) ||
        (choice = try_b7(s))) {
        ++stats.rule_counts[choice->rule];
        return choice;
    }
    return std::nullopt;
}

TerminalAnswer terminal_check(const SolverState& s) {
    if (s.free_count() != 0)
        fail(ErrorKind::Precondition, "terminal_check requires F to be empty");
    Cut cut = s.to_cut();
    return {classify_cut(s.graph(), cut) == CutClass::PerfectMatchingCut, cut};
}

namespace {

// Depth-first search over solver states for one seed edge on a connected
// graph. Explicit stack, states copied on branch.
SolveResult search_from_seed(const Graph& g, Vertex a, Vertex b, const SolverOptions& options) {
    SolveResult res;
    res.algorithm = "branch";
    init_rule_counts(res.stats, options.enable_r10);
    res.stats.seed_edge = Edge{a, b};

    std::vector<std::pair<SolverState, int>> stack;
    stack.emplace_back(SolverState(g, a, b), 0);
    while (!stack.empty()) {
        auto [state, depth] = std::move(stack.back());
        stack.pop_back();
        ++res.stats.nodes;
        res.stats.max_depth = std::max(res.stats.max_depth, depth);

        auto outcome = apply_reductions(state, res.stats, options.enable_r10);
        if (outcome.kind == ReductionOutcome::Kind::Infeasible) continue;
        if (state.free_count() == 0) {
            auto terminal = terminal_check(state);
            if (terminal.is_pmc) {
                res.has_pmc = true;
                res.certificate = std::move(terminal.cut);
                return res;
            }
            continue;
        }
        auto choice = select_branch(state, res.stats);
        PMC_CHECK(choice.has_value(),
                  "branching covers every state with free vertices on a connected graph");
        for (auto it = choice->children.rbegin(); it != choice->children.rend(); ++it)
            stack.emplace_back(std::move(*it), depth + 1);
    }
    return res;
}

// All seed edges of a connected graph, lowest successful seed reported in
// deterministic mode.
SolveResult solve_connected(const Graph& g, const SolverOptions& options) {
    SolveResult total;
    total.algorithm = "branch";
    init_rule_counts(total.stats, options.enable_r10);
    const int n = g.vertex_count();
    if (n == 0 || n % 2 == 1 || n == 1) return total;

    auto seeds = g.edges();
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (const Edge& e : seeds) {
            SolveResult one = search_from_seed(g, e.first, e.second, options);
            total.stats.merge(one.stats);
            if (one.has_pmc) {
                total.has_pmc = true;
                total.certificate = std::move(one.certificate);
                total.stats.seed_edge = e;
                break;
            }
        }
        return total;
    }

    // Workers pull seed indices in ascending order, so by the time a success
    // at index w is recorded every lower seed has been or will be finished;
    // seeds above the best success are skipped. Results and stats therefore
    // match the serial run exactly.
    std::vector<std::optional<SolveResult>> results(seeds.size());
    std::atomic<size_t> next{0};
    std::atomic<size_t> best_success{seeds.size()};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= seeds.size() || i > best_success.load()) return;
            SolveResult one = search_from_seed(g, seeds[i].first, seeds[i].second, options);
            if (one.has_pmc) {
                size_t cur = best_success.load();
                while (i < cur && !best_success.compare_exchange_weak(cur, i)) {
                }
            }
            results[i] = std::move(one);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    size_t winner = best_success.load();
    size_t up_to = winner == seeds.size() ? seeds.size() : winner + 1;
    for (size_t i = 0; i < up_to; ++i)
        if (results[i]) total.stats.merge(results[i]->stats);
    if (winner < seeds.size()) {
        total.has_pmc = true;
        total.certificate = results[winner]->certificate;
        total.stats.seed_edge = seeds[winner];
    }
    return total;
}

void verify_certificate(const Graph& g, const SolveResult& res) {
    if (!res.has_pmc) return;
    PMC_CHECK(res.certificate.has_value(), "positive answer without certificate");
    PMC_CHECK(classify_cut(g, *res.certificate) == CutClass::PerfectMatchingCut,
              "certificate failed verification");
}

}  // namespace

SolveResult solve_from_seed(const Graph& g, Vertex a, Vertex b, const SolverOptions& options) {
    if (a < 0 || a >= g.vertex_count() || b < 0 || b >= g.vertex_count() || !g.has_edge(a, b))
        fail(ErrorKind::InvalidArgument,
             "(" + std::to_string(a) + ", " + std::to_string(b) + ") is not an edge");

    auto comps = connected_components(g);
    SolveResult total;
    total.algorithm = "branch";
    init_rule_counts(total.stats, options.enable_r10);
    Cut merged;
    merged.side.assign(g.vertex_count(), Side::X);
    bool all_ok = true;
    for (const auto& comp : comps) {
        auto sub = induced_subgraph(g, comp);
        bool holds_seed = std::binary_search(comp.begin(), comp.end(), a);
        SolveResult part;
        if (holds_seed) {
            std::vector<int> local(g.vertex_count(), -1);
            for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
            part = search_from_seed(sub.graph, local[a], local[b], options);
            total.stats.seed_edge = Edge{a, b};
        } else {
            part = solve_connected(sub.graph, options);
        }
        total.stats.merge(part.stats);
        if (!part.has_pmc) {
            all_ok = false;
            break;
        }
        for (size_t i = 0; i < comp.size(); ++i) merged.side[comp[i]] = part.certificate->side[i];
    }
    total.has_pmc = all_ok;
    if (all_ok) total.certificate = std::move(merged);
    verify_certificate(g, total);
    return total;
}

SolveResult solve_pmc(const Graph& g, const SolverOptions& options) {
    SolveResult total;
    total.algorithm = "branch";
    init_rule_counts(total.stats, options.enable_r10);
    const int n = g.vertex_count();
    if (n == 0 || n % 2 == 1) return total;

    auto comps = connected_components(g);
    Cut merged;
    merged.side.assign(n, Side::X);
    for (const auto& comp : comps) {
        auto sub = induced_subgraph(g, comp);
        SolveResult part = solve_connected(sub.graph, options);
        total.stats.merge(part.stats);
        if (comps.size() == 1) total.stats.seed_edge = part.stats.seed_edge;
        if (!part.has_pmc) return total;
        for (size_t i = 0; i < comp.size(); ++i) merged.side[comp[i]] = part.certificate->side[i];
    }
    total.has_pmc = true;
    total.certificate = std::move(merged);
    verify_certificate(g, total);
    return total;
}

double branching_factor(const BranchVector& v, double tol) {
    const auto& t = v.decreases;
    if (t.size() < 2) fail(ErrorKind::InvalidArgument, "branching vector needs at least two entries");
    for (int e : t)
        if (e < 1) fail(ErrorKind::InvalidArgument, "branching vector entries must be positive");
    if (!(tol > 0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");

    auto defect = [&](double x) {
        double sum = 0;
        for (int e : t) sum += std::pow(x, -static_cast<double>(e));
        return 1.0 - sum;  // increasing in x, negative at 1, >= 0 at r
    };
    double lo = 1.0, hi = static_cast<double>(t.size());
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (defect(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::map<std::string, double> certify_branching_factors(double tol) {
    auto tau = [&](std::vector<int> entries) { return branching_factor({std::move(entries)}, tol); };
    std::map<std::string, double> out;
    out["B1"] = tau({3, 3});
    out["B2"] = tau({3, 3});
    out["B3"] = tau({4, 2});

    double b4 = 0;
    for (int r = 2; r <= 16; ++r) b4 = std::max(b4, tau(std::vector<int>(r, r + 2)));
    out["B4"] = b4;

    double b5 = 0;
    for (int q = 2; q <= 8; ++q)
        for (int p = 0; p <= 8; ++p) {
            int r = p + q;
            std::vector<int> entries(p, r + 2 * q);
            entries.insert(entries.end(), q, r + 2 * (q - 1));
            b5 = std::max(b5, tau(entries));
        }
    out["B5"] = b5;

    double b6 = 0;
    for (int r = 2; r <= 8; ++r)
        for (int s = 2; s <= 8; ++s) b6 = std::max(b6, tau({r + s + 1, r + 1}));
    out["B6"] = b6;

    double b7 = 0;
    for (int k = 4; k <= 16; ++k) b7 = std::max(b7, tau(std::vector<int>(k, k + 2)));
    out["B7"] = b7;
    return out;
}

}  // namespace pmc
