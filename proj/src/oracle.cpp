#include "oracle.hpp"

#include <algorithm>
#include <bit>

namespace pmc {

namespace {

constexpr int kMaskBits = 62;

// Canonical local cuts (lowest vertex on X) of one component, as bitmasks
// with the i-th smallest vertex at bit (k-1-i), so ascending mask order is
// lexicographic order of the side vector. Bit set = side Y.
std::vector<uint64_t> component_pmcs(const Graph& g, const std::vector<Vertex>& comp, bool first_only) {
    const int k = static_cast<int>(comp.size());
    std::vector<uint64_t> found;
    if (k < 2) return found;  // a cut needs two non-empty sides

    std::vector<int> local(g.vertex_count(), -1);
    for (int i = 0; i < k; ++i) local[comp[i]] = i;
    std::vector<uint64_t> adjm(k, 0);
    for (int i = 0; i < k; ++i)
        for (Vertex w : g.neighbors(comp[i])) adjm[i] |= uint64_t{1} << (k - 1 - local[w]);

    const uint64_t full = (k == 64) ? ~uint64_t{0} : (uint64_t{1} << k) - 1;
    const uint64_t top = uint64_t{1} << (k - 1);
    for (uint64_t ymask = 0; ymask < top; ++ymask) {
        if (ymask == 0) continue;  // side Y empty
        uint64_t xmask = full & ~ymask;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            uint64_t bit = uint64_t{1} << (k - 1 - i);
            uint64_t cross = adjm[i] & ((ymask & bit) ? xmask : ymask);
            ok = std::popcount(cross) == 1;
        }
        if (ok) {
            found.push_back(ymask);
            if (first_only) return found;
        }
    }
    return found;
}

void check_limit(const Graph& g, const OracleLimits& limits) {
    if (limits.max_vertices_pmc < 1) fail(ErrorKind::InvalidArgument, "oracle limit must be positive");
    if (g.vertex_count() > limits.max_vertices_pmc)
        fail(ErrorKind::LimitExceeded, "graph has " + std::to_string(g.vertex_count()) +
                                           " vertices, oracle limit is " +
                                           std::to_string(limits.max_vertices_pmc));
    if (g.vertex_count() > kMaskBits)
        fail(ErrorKind::LimitExceeded, "oracle enumeration supports at most 62 vertices");
}

Cut compose(const std::vector<std::vector<Vertex>>& comps, const std::vector<uint64_t>& masks,
            int n) {
    Cut cut;
    cut.side.assign(n, Side::X);
    for (size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c];
        const int k = static_cast<int>(comp.size());
        for (int i = 0; i < k; ++i)
            if (masks[c] >> (k - 1 - i) & 1) cut.side[comp[i]] = Side::Y;
    }
    return cut;
}

}  // namespace

std::vector<Cut> enumerate_pmcs(const Graph& g, const OracleLimits& limits) {
    check_limit(g, limits);
    const int n = g.vertex_count();
    if (n == 0) return {};

    auto comps = connected_components(g);
    std::vector<std::vector<uint64_t>> per_comp;
    for (const auto& comp : comps) {
        auto cuts = component_pmcs(g, comp, false);
        if (cuts.empty()) return {};  // that component has no perfect matching cut
        per_comp.push_back(std::move(cuts));
    }

    // Compose one choice per component. The first component (the one holding
    // vertex 0) keeps its canonical orientation; the rest also contribute
    // their flipped orientation.
    std::vector<Cut> out;
    std::vector<uint64_t> choice(comps.size());
    auto rec = [&](auto&& self, size_t c) -> void {
        if (c == comps.size()) {
            out.push_back(compose(comps, choice, n));
            return;
        }
        const uint64_t full = (uint64_t{1} << comps[c].size()) - 1;
        for (uint64_t mask : per_comp[c]) {
            choice[c] = mask;
            self(self, c + 1);
            if (c > 0) {
                choice[c] = full & ~mask;
                self(self, c + 1);
            }
        }
    };
    rec(rec, 0);

    std::sort(out.begin(), out.end(), [](const Cut& a, const Cut& b) { return a.side < b.side; });
    return out;
}

OracleAnswer has_pmc_oracle(const Graph& g, const OracleLimits& limits) {
    check_limit(g, limits);
    const int n = g.vertex_count();
    if (n == 0) return {};

    auto comps = connected_components(g);
    std::vector<uint64_t> choice;
    for (const auto& comp : comps) {
        auto first = component_pmcs(g, comp, true);
        if (first.empty()) return {};
        choice.push_back(first[0]);
    }
    // The componentwise lexicographic minimum composes to the global one, so
    // this witness equals enumerate_pmcs(g).front().
    OracleAnswer ans;
    ans.has_pmc = true;
    ans.witness = compose(comps, choice, n);
    return ans;
}

NaeAnswer nae_brute(const CnfFormula& f, const OracleLimits& limits) {
    if (limits.max_variables_nae < 1) fail(ErrorKind::InvalidArgument, "oracle limit must be positive");
    if (f.num_vars > limits.max_variables_nae)
        fail(ErrorKind::LimitExceeded, "formula has " + std::to_string(f.num_vars) +
                                           " variables, oracle limit is " +
                                           std::to_string(limits.max_variables_nae));
    if (f.num_vars > kMaskBits) fail(ErrorKind::LimitExceeded, "nae_brute supports at most 62 variables");

    const int n = f.num_vars;
    // Variable i at bit (n-i): ascending masks enumerate assignments in
    // lexicographic order with false before true.
    struct ClauseBits {
        uint64_t b0, b1, b2;
    };
    std::vector<ClauseBits> bits;
    for (const auto& c : f.clauses)
        bits.push_back({uint64_t{1} << (n - c[0]), uint64_t{1} << (n - c[1]), uint64_t{1} << (n - c[2])});

    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (const auto& c : bits) {
            bool a = mask & c.b0, b = mask & c.b1, d = mask & c.b2;
            if (a == b && b == d) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<bool> assignment(n);
            for (int i = 1; i <= n; ++i) assignment[i - 1] = mask >> (n - i) & 1;
            return {true, std::move(assignment)};
        }
    }
    return {};
}

}  // namespace pmc
