#include "reduce.hpp"

#include <algorithm>

#include <json.hpp>

namespace pmc {

using ordered_json = nlohmann::ordered_json;

namespace {

// Cube template: vertex 0 carries the clause vertices 1..3, vertex 4 the
// opposite corner; edge list order fixes the subdivision layout.
constexpr std::array<Edge, 12> kCubeEdges = {{{0, 1},
                                              {0, 2},
                                              {0, 3},
                                              {4, 5},
                                              {4, 6},
                                              {4, 7},
                                              {1, 6},
                                              {1, 7},
                                              {2, 5},
                                              {2, 7},
                                              {3, 5},
                                              {3, 6}}};

}  // namespace

void ReductionReport::add(std::string name, bool pass, std::string detail) {
    all_pass = all_pass && pass;
    items.push_back({std::move(name), pass, std::move(detail)});
}

Reduction reduce_basic(const CnfFormula& f) {
    const int m = f.num_clauses();
    const int n = f.num_vars;
    if (m < 1) fail(ErrorKind::InvalidArgument, "reduction needs at least one clause");

    Reduction red;
    red.map.variant = "basic";
    red.map.num_vars = n;
    red.map.num_clauses = m;

    std::vector<Edge> edges;
    for (int j = 0; j < m; ++j) {
        int base = 8 * j;
        for (const auto& [a, b] : kCubeEdges) edges.emplace_back(base + a, base + b);
        red.map.clause_gadgets.push_back({base, 8, {base + 1, base + 2, base + 3}});
    }
    for (int i = 0; i < n; ++i) {
        int x = 8 * m + 2 * i;
        edges.emplace_back(x, x + 1);
        ReductionMap::VariableGadget vg;
        vg.base = x;
        vg.size = 2;
        vg.vertices = {x};
        vg.dummy = x + 1;
        red.map.variable_gadgets.push_back(std::move(vg));
    }
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < 3; ++k) {
            Vertex var_vertex = red.map.variable_gadgets[f.clauses[j][k] - 1].vertices[0];
            edges.push_back(make_edge(var_vertex, red.map.clause_gadgets[j].clause_vertices[k]));
        }

    red.graph = Graph::from_edges(8 * m + 2 * n, edges);
    PMC_CHECK(red.graph.vertex_count() == 8 * m + 2 * n, "vertex count 8m + 2n");
    PMC_CHECK(is_bipartite(red.graph), "basic reduction output is bipartite");
    return red;
}

Reduction reduce_girth(const CnfFormula& f, int girth_target, std::optional<int> h_override) {
    const int m = f.num_clauses();
    const int n = f.num_vars;
    if (m < 3) fail(ErrorKind::InvalidArgument, "girth reduction needs at least 3 clauses");
    if (girth_target < 3) fail(ErrorKind::InvalidArgument, "girth target must be at least 3");

    int h;
    if (h_override) {
        h = *h_override;
        if (h < 0) fail(ErrorKind::InvalidArgument, "h must be non-negative");
    } else {
        // smallest h >= 0 with 4m(h+1) >= g and 8(h+2) >= g
        h = std::max({0, (girth_target + 4 * m - 1) / (4 * m) - 1, (girth_target + 7) / 8 - 2});
    }

    Reduction red;
    red.map.variant = "girth";
    red.map.num_vars = n;
    red.map.num_clauses = m;
    red.map.h = h;
    red.map.girth_target = girth_target;

    const int seg = 4 * h + 4;  // inner vertices per subdivided cube edge
    const int gadget_size = 8 + 12 * seg;
    std::vector<Edge> edges;
    for (int j = 0; j < m; ++j) {
        int base = j * gadget_size;
        for (int t = 0; t < 12; ++t) {
            auto [a, b] = kCubeEdges[t];
            int first = base + 8 + t * seg;
            edges.push_back(make_edge(base + a, first));
            for (int i = 0; i + 1 < seg; ++i) edges.emplace_back(first + i, first + i + 1);
            edges.push_back(make_edge(first + seg - 1, base + b));
        }
        // The fixed degree-3 vertex is cube corner 0; its neighbors after
        // subdivision are the first inner vertices of edges 0, 1, 2.
        red.map.clause_gadgets.push_back(
            {base, gadget_size, {base + 8, base + 8 + seg, base + 8 + 2 * seg}});
    }

    const int cycle_len = 4 * m * (h + 1);
    const int clause_part = m * gadget_size;
    for (int i = 0; i < n; ++i) {
        int base = clause_part + i * cycle_len;
        for (int p = 0; p + 1 < cycle_len; ++p) edges.emplace_back(base + p, base + p + 1);
        edges.push_back(make_edge(base, base + cycle_len - 1));
        ReductionMap::VariableGadget vg;
        vg.base = base;
        vg.size = cycle_len;
        for (int j = 0; j < m; ++j) vg.vertices.push_back(base + j * (4 * h + 4));
        red.map.variable_gadgets.push_back(std::move(vg));
    }

    for (int j = 0; j < m; ++j)
        for (int k = 0; k < 3; ++k) {
            Vertex anchor = red.map.variable_gadgets[f.clauses[j][k] - 1].vertices[j];
            edges.push_back(make_edge(anchor, red.map.clause_gadgets[j].clause_vertices[k]));
        }

    const int total = m * gadget_size + n * cycle_len;
    red.graph = Graph::from_edges(total, edges);
    PMC_CHECK(red.graph.vertex_count() == m * (8 + 12 * (4 * h + 4)) + 4 * n * m * (h + 1),
              "vertex count m(8 + 12(4h+4)) + 4nm(h+1)");
    PMC_CHECK(is_bipartite(red.graph), "girth reduction output is bipartite");
    PMC_CHECK(max_degree(red.graph) == 3, "girth reduction output has maximum degree 3");
    auto gi = girth(red.graph);
    PMC_CHECK(gi.has_value() && *gi >= girth_target, "girth meets the target");
    return red;
}

namespace {

constexpr int kUnset = -1;

// One round of unit propagation toward a perfect matching cut:
//  - an open vertex with two same-side neighbors joins that side,
//  - a matched vertex pulls its open neighbors to its own side,
//  - an unmatched vertex with one open neighbor crosses into it.
// Returns false on contradiction (two cross neighbors, or no way left to
// find a mate).
bool propagate_sides(const Graph& g, std::vector<int>& side) {
    const int n = g.vertex_count();
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v = 0; v < n; ++v) {
            if (side[v] == kUnset) {
                int same[2] = {0, 0};
                for (Vertex w : g.neighbors(v))
                    if (side[w] != kUnset) ++same[side[w]];
                if (same[0] >= 2 && same[1] >= 2) return false;
                for (int s : {0, 1})
                    if (same[s] >= 2) {
                        side[v] = s;
                        changed = true;
                        break;
                    }
                continue;
            }
            int cross = 0, open = 0;
            Vertex open_v = -1;
            for (Vertex w : g.neighbors(v)) {
                if (side[w] == kUnset) {
                    ++open;
                    open_v = w;
                } else if (side[w] != side[v]) {
                    ++cross;
                }
            }
            if (cross > 1 || (cross == 0 && open == 0)) return false;
            if (cross == 1 && open > 0) {
                for (Vertex w : g.neighbors(v))
                    if (side[w] == kUnset) side[w] = side[v];
                changed = true;
            } else if (cross == 0 && open == 1) {
                side[open_v] = 1 - side[v];
                changed = true;
            }
        }
    }
    return true;
}

// Unit propagation decides almost everything, but corners of a subdivided
// cube far from the clause vertices keep a residual binary choice that only
// global consistency settles. Resolve those by deterministic backtracking:
// lowest open vertex first, side X tried before Y.
bool complete_sides(const Graph& g, std::vector<int>& side) {
    if (!propagate_sides(g, side)) return false;
    Vertex open = -1;
    for (Vertex v = 0; v < g.vertex_count() && open < 0; ++v)
        if (side[v] == kUnset) open = v;
    if (open < 0) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            int cross = 0;
            for (Vertex w : g.neighbors(v))
                if (side[w] != side[v]) ++cross;
            if (cross != 1) return false;
        }
        return true;
    }
    for (int s : {0, 1}) {
        std::vector<int> attempt = side;
        attempt[open] = s;
        if (complete_sides(g, attempt)) {
            side = std::move(attempt);
            return true;
        }
    }
    return false;
}

}  // namespace

Cut lift_assignment(const CnfFormula& f, const Graph& g, const ReductionMap& map,
                    const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != f.num_vars)
        fail(ErrorKind::InvalidArgument, "assignment length mismatch");
    if (!is_nae_assignment(f, assignment))
        fail(ErrorKind::InvalidArgument, "assignment is not a nae assignment");

    std::vector<int> side(g.vertex_count(), kUnset);
    for (int i = 0; i < f.num_vars; ++i) {
        const auto& vg = map.variable_gadgets[i];
        int s = assignment[i] ? 0 : 1;  // true variables on X
        if (map.variant == "basic") {
            side[vg.vertices[0]] = s;
        } else {
            // The whole cycle is seeded: blocks of two alternate sides, the
            // anchors sit at positions divisible by four.
            for (int p = 0; p < vg.size; ++p) side[vg.base + p] = p % 4 <= 1 ? s : 1 - s;
        }
    }
    for (int j = 0; j < f.num_clauses(); ++j)
        for (int k = 0; k < 3; ++k)
            side[map.clause_gadgets[j].clause_vertices[k]] = assignment[f.clauses[j][k] - 1] ? 0 : 1;

    PMC_CHECK(complete_sides(g, side), "nae seeds extend to a perfect matching cut");

    Cut cut;
    cut.side.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) cut.side[v] = side[v] == 0 ? Side::X : Side::Y;
    PMC_CHECK(classify_cut(g, cut) == CutClass::PerfectMatchingCut,
              "lifted assignment yields a perfect matching cut");
    return cut;
}

std::vector<bool> extract_assignment(const CnfFormula& f, const Graph& g, const ReductionMap& map,
                                     const Cut& cut) {
    if (classify_cut(g, cut) != CutClass::PerfectMatchingCut)
        fail(ErrorKind::InvalidArgument, "cut is not a perfect matching cut of the reduced graph");

    std::vector<bool> assignment(f.num_vars);
    for (int i = 0; i < f.num_vars; ++i) {
        const auto& vg = map.variable_gadgets[i];
        Side s = cut.side[vg.vertices[0]];
        for (Vertex v : vg.vertices)
            PMC_CHECK(cut.side[v] == s, "all variable vertices of one variable share a side");
        assignment[i] = s == Side::X;
    }
    PMC_CHECK(is_nae_assignment(f, assignment), "extracted assignment is nae");
    return assignment;
}

ReductionReport check_reduction(const CnfFormula& f, const Graph& g, const ReductionMap& map,
                                const OracleLimits& limits) {
    ReductionReport report;
    const int m = f.num_clauses();
    const int n = f.num_vars;

    long expected = map.variant == "basic"
                        ? 8L * m + 2L * n
                        : static_cast<long>(m) * (8 + 12 * (4 * map.h + 4)) +
                              4L * n * m * (map.h + 1);
    report.add("vertex_count", g.vertex_count() == expected,
               "expected " + std::to_string(expected) + ", got " + std::to_string(g.vertex_count()));
    report.add("bipartite", is_bipartite(g), "");

    if (map.variant == "girth") {
        int md = max_degree(g);
        report.add("max_degree_3", md == 3, "max degree " + std::to_string(md));
        auto gi = girth(g);
        report.add("girth_bound", gi.has_value() && *gi >= map.girth_target,
                   "girth " + (gi ? std::to_string(*gi) : std::string("infinite")) + " >= " +
                       std::to_string(map.girth_target));
    } else {
        // Each clause gadget on its own has exactly the three cube cuts.
        bool all3 = true;
        std::string detail;
        for (const auto& cg : map.clause_gadgets) {
            std::vector<Vertex> verts(cg.size);
            for (int i = 0; i < cg.size; ++i) verts[i] = cg.base + i;
            auto sub = induced_subgraph(g, verts);
            size_t cuts = enumerate_pmcs(sub.graph, limits).size();
            if (cuts != 3) {
                all3 = false;
                detail = "gadget at " + std::to_string(cg.base) + " has " + std::to_string(cuts);
                break;
            }
        }
        report.add("clause_gadget_has_3_pmcs", all3, detail);
    }

    if (g.vertex_count() <= limits.max_vertices_pmc) {
        std::vector<bool> is_clause_vertex(g.vertex_count(), false), is_var_vertex(g.vertex_count(), false);
        for (const auto& cg : map.clause_gadgets)
            for (Vertex v : cg.clause_vertices) is_clause_vertex[v] = true;
        for (const auto& vg : map.variable_gadgets)
            for (Vertex v : vg.vertices) is_var_vertex[v] = true;
        auto cuts = enumerate_pmcs(g, limits);
        bool clean = true;
        for (const auto& cut : cuts)
            for (const auto& [u, v] : g.edges())
                if (cut.side[u] != cut.side[v] &&
                    ((is_clause_vertex[u] && is_var_vertex[v]) || (is_var_vertex[u] && is_clause_vertex[v])))
                    clean = false;
        report.add("no_cut_edge_between_clause_and_variable", clean,
                   "checked " + std::to_string(cuts.size()) + " cuts");
        auto nae = nae_brute(f, limits);
        report.add("equivalence_nae_iff_pmc", nae.satisfiable == !cuts.empty(),
                   std::string("nae=") + (nae.satisfiable ? "true" : "false") + ", pmcs=" +
                       std::to_string(cuts.size()));
    }
    return report;
}

ReductionReport verify_reduction(const CnfFormula& f, const std::string& variant, int girth_target,
                                 std::optional<int> h_override, const OracleLimits& limits) {
    Reduction red;
    if (variant == "basic") {
        red = reduce_basic(f);
    } else if (variant == "girth") {
        red = reduce_girth(f, girth_target < 3 ? 3 : girth_target, h_override);
    } else {
        fail(ErrorKind::InvalidArgument, "unknown reduction variant \"" + variant + "\"");
    }
    return check_reduction(f, red.graph, red.map, limits);
}

std::string reduction_map_to_json(const ReductionMap& map) {
    ordered_json j;
    j["variant"] = map.variant;
    j["num_vars"] = map.num_vars;
    j["num_clauses"] = map.num_clauses;
    if (map.variant == "girth") {
        j["h"] = map.h;
        j["girth_target"] = map.girth_target;
    }
    auto up = [](Vertex v) { return v + 1; };
    j["clause_gadgets"] = ordered_json::array();
    for (const auto& cg : map.clause_gadgets) {
        ordered_json e;
        e["base"] = up(cg.base);
        e["size"] = cg.size;
        e["clause_vertices"] = {up(cg.clause_vertices[0]), up(cg.clause_vertices[1]),
                                up(cg.clause_vertices[2])};
        j["clause_gadgets"].push_back(std::move(e));
    }
    j["variable_gadgets"] = ordered_json::array();
    for (const auto& vg : map.variable_gadgets) {
        ordered_json e;
        e["base"] = up(vg.base);
        e["size"] = vg.size;
        e["vertices"] = ordered_json::array();
        for (Vertex v : vg.vertices) e["vertices"].push_back(up(v));
        if (vg.dummy >= 0) e["dummy"] = up(vg.dummy);
        j["variable_gadgets"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

ReductionMap reduction_map_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::Parse, std::string("bad reduction map: ") + e.what());
    }
    try {
        ReductionMap map;
        map.variant = j.at("variant").get<std::string>();
        map.num_vars = j.at("num_vars").get<int>();
        map.num_clauses = j.at("num_clauses").get<int>();
        map.h = j.value("h", 0);
        map.girth_target = j.value("girth_target", 0);
        for (const auto& e : j.at("clause_gadgets")) {
            ReductionMap::ClauseGadget cg;
            cg.base = e.at("base").get<int>() - 1;
            cg.size = e.at("size").get<int>();
            for (int k = 0; k < 3; ++k) cg.clause_vertices[k] = e.at("clause_vertices").at(k).get<int>() - 1;
            map.clause_gadgets.push_back(cg);
        }
        for (const auto& e : j.at("variable_gadgets")) {
            ReductionMap::VariableGadget vg;
            vg.base = e.at("base").get<int>() - 1;
            vg.size = e.at("size").get<int>();
            for (const auto& v : e.at("vertices")) vg.vertices.push_back(v.get<int>() - 1);
            if (e.contains("dummy")) vg.dummy = e.at("dummy").get<int>() - 1;
            map.variable_gadgets.push_back(std::move(vg));
        }
        return map;
    } catch (const ordered_json::exception& e) {
        fail(ErrorKind::Parse, std::string("bad reduction map: ") + e.what());
    }
}

}  // namespace pmc
