#include "suite.hpp"

#include <algorithm>

#include <json.hpp>

namespace pmc {

using ordered_json = nlohmann::ordered_json;

std::optional<Algo> algo_from_name(std::string_view name) {
    if (name == "auto") return Algo::Auto;
    if (name == "oracle") return Algo::Oracle;
    if (name == "branch") return Algo::Branch;
    if (name == "tfree") return Algo::TFree;
    if (name == "pseudochordal") return Algo::PseudoChordal;
    if (name == "deg2") return Algo::Deg2;
    return std::nullopt;
}

std::string_view algo_name(Algo a) {
    switch (a) {
        case Algo::Auto: return "auto";
        case Algo::Oracle: return "oracle";
        case Algo::Branch: return "branch";
        case Algo::TFree: return "tfree";
        case Algo::PseudoChordal: return "pseudochordal";
        case Algo::Deg2: return "deg2";
    }
    return "?";
}

namespace {

SolveResult solve_component(const Graph& comp, Algo algo, const SuiteOptions& options) {
    switch (algo) {
        case Algo::Branch: return solve_pmc(comp, options.branch);
        case Algo::Deg2: return solve_max_deg2(comp);
        case Algo::PseudoChordal: return solve_pseudo_chordal(comp);
        case Algo::TFree: return solve_t_free(comp);
        default: PMC_CHECK(false, "component dispatch"); return {};
    }
}

Algo pick_for_component(const Graph& comp) {
    if (max_degree(comp) <= 2) return Algo::Deg2;
    if (is_pseudo_chordal(comp).pseudo_chordal) return Algo::PseudoChordal;
    if (is_t_free(comp)) return Algo::TFree;
    return Algo::Branch;
}

}  // namespace

SolveResult solve_with(const Graph& g, const SuiteOptions& options) {
    // Preconditions of explicitly requested algorithms are checked before
    // dispatch, on the whole graph.
    switch (options.algo) {
        case Algo::Oracle: {
            auto answer = has_pmc_oracle(g, options.limits);
            SolveResult res;
            res.algorithm = "oracle";
            res.has_pmc = answer.has_pmc;
            res.certificate = std::move(answer.witness);
            if (res.has_pmc)
                PMC_CHECK(classify_cut(g, *res.certificate) == CutClass::PerfectMatchingCut,
                          "oracle witness verifies");
            return res;
        }
        case Algo::Deg2:
            if (int d = max_degree(g); d > 2)
                fail(ErrorKind::Precondition,
                     "deg2 requires maximum degree 2, got " + std::to_string(d));
            break;
        case Algo::PseudoChordal:
            if (auto check = is_pseudo_chordal(g); !check.pseudo_chordal)
                fail(ErrorKind::Precondition,
                     "input is not pseudo-chordal: edge (" +
                         std::to_string(check.violating_edge->first + 1) + ", " +
                         std::to_string(check.violating_edge->second + 1) +
                         ") of a non-trivial block lies in no triangle");
            break;
        case Algo::TFree:
            if (auto witness = find_induced_t(g)) throw TFreeViolation(*witness);
            break;
        default: break;
    }

    const int n = g.vertex_count();
    SolveResult total;
    total.algorithm = std::string(algo_name(options.algo));
    if (n == 0) return total;

    auto comps = connected_components(g);
    Cut merged;
    merged.side.assign(n, Side::X);
    std::vector<std::string> used;
    bool all_ok = true;
    for (const auto& comp : comps) {
        auto sub = induced_subgraph(g, comp);
        Algo algo = options.algo == Algo::Auto ? pick_for_component(sub.graph) : options.algo;
        SolveResult part = solve_component(sub.graph, algo, options);
        used.push_back(part.algorithm);
        total.stats.merge(part.stats);
        if (comps.size() == 1) total.stats.seed_edge = part.stats.seed_edge;
        if (!part.has_pmc) {
            all_ok = false;
            break;
        }
        for (size_t i = 0; i < comp.size(); ++i) merged.side[comp[i]] = part.certificate->side[i];
    }
    if (options.algo == Algo::Auto) {
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        std::string joined;
        for (const auto& u : used) joined += (joined.empty() ? "" : ",") + u;
        total.algorithm = "auto(" + joined + ")";
    }
    total.has_pmc = all_ok;
    if (all_ok) {
        total.certificate = std::move(merged);
        PMC_CHECK(classify_cut(g, *total.certificate) == CutClass::PerfectMatchingCut,
                  "merged certificate verifies");
    }
    return total;
}

Applicability applicable_algorithms(const Graph& g, const OracleLimits& limits) {
    Applicability a;
    a.oracle = g.vertex_count() <= limits.max_vertices_pmc;
    a.deg2 = max_degree(g) <= 2;
    a.pseudo_chordal = is_pseudo_chordal(g).pseudo_chordal;
    a.t_free = is_t_free(g);
    return a;
}

CrossCheckReport cross_check(const Graph& g, const SuiteOptions& options) {
    Applicability a = applicable_algorithms(g, options.limits);
    CrossCheckReport report;
    auto run = [&](Algo algo) {
        SuiteOptions local = options;
        local.algo = algo;
        SolveResult res = solve_with(g, local);
        report.entries.push_back({res.algorithm, res.has_pmc});
    };
    if (a.oracle) run(Algo::Oracle);
    run(Algo::Branch);
    if (a.deg2) run(Algo::Deg2);
    if (a.pseudo_chordal) run(Algo::PseudoChordal);
    if (a.t_free) run(Algo::TFree);
    for (const auto& e : report.entries)
        if (e.has_pmc != report.entries.front().has_pmc) report.agree = false;
    return report;
}

std::string stats_to_json(const SolverStats& stats) {
    ordered_json j;
    j["nodes"] = stats.nodes;
    ordered_json rc = ordered_json::object();
    for (const auto& [k, v] : stats.rule_counts) rc[k] = v;
    j["rule_counts"] = std::move(rc);
    j["depth"] = stats.max_depth;
    if (stats.seed_edge)
        j["seed_edge"] = {stats.seed_edge->first + 1, stats.seed_edge->second + 1};
    else
        j["seed_edge"] = nullptr;
    return j.dump();
}

std::string solve_result_to_json(const SolveResult& res, std::optional<double> wall_ms) {
    ordered_json j;
    j["has_pmc"] = res.has_pmc;
    j["algorithm"] = res.algorithm;
    if (res.certificate) {
        ordered_json cert;
        ordered_json xs = ordered_json::array(), ys = ordered_json::array();
        for (Vertex v = 0; v < static_cast<Vertex>(res.certificate->side.size()); ++v)
            (res.certificate->side[v] == Side::X ? xs : ys).push_back(v + 1);
        cert["X"] = std::move(xs);
        cert["Y"] = std::move(ys);
        j["certificate"] = std::move(cert);
    } else {
        j["certificate"] = nullptr;
    }
    j["stats"] = ordered_json::parse(stats_to_json(res.stats));
    if (wall_ms) j["wall_ms"] = *wall_ms;
    return j.dump(2) + "\n";
}

}  // namespace pmc
