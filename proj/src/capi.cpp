#include "pmc.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "branch.hpp"
#include "cnf.hpp"
#include "generate.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "poly.hpp"
#include "reduce.hpp"
#include "suite.hpp"

using nlohmann::ordered_json;

struct pmc_graph_s {
    pmc::Graph g;
};
struct pmc_result_s {
    pmc::SolveResult res;
};
struct pmc_cutset_s {
    std::vector<pmc::Cut> cuts;
    int n;
};
struct pmc_cnf_s {
    pmc::CnfFormula f;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_error_json;

pmc_status status_of(pmc::ErrorKind kind) {
    switch (kind) {
        case pmc::ErrorKind::Parse: return PMC_ERROR_PARSE;
        case pmc::ErrorKind::InvalidArgument: return PMC_ERROR_INVALID_ARGUMENT;
        case pmc::ErrorKind::LimitExceeded: return PMC_ERROR_LIMIT_EXCEEDED;
        case pmc::ErrorKind::Precondition: return PMC_ERROR_PRECONDITION;
        case pmc::ErrorKind::Io: return PMC_ERROR_IO;
        case pmc::ErrorKind::Internal: return PMC_ERROR_INTERNAL;
    }
    return PMC_ERROR_INTERNAL;
}

pmc_status record_error(pmc_status status, const std::string& message,
                        const pmc::TWitness* witness = nullptr) {
    g_last_error = message;
    ordered_json j;
    j["status"] = pmc_status_name(status);
    j["message"] = message;
    if (witness) {
        ordered_json w = ordered_json::array();
        for (pmc::Vertex v : witness->vertices()) w.push_back(v + 1);
        j["witness"] = std::move(w);
    }
    g_last_error_json = j.dump();
    return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
pmc_status guarded(Fn&& fn) {
    try {
        fn();
        return PMC_OK;
    } catch (const pmc::TFreeViolation& e) {
        return record_error(PMC_ERROR_PRECONDITION, e.what(), &e.witness);
    } catch (const pmc::Error& e) {
        return record_error(status_of(e.kind()), e.what());
    } catch (const std::exception& e) {
        return record_error(PMC_ERROR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<bool> assignment_from_ints(const pmc_cnf* f, const int* assignment) {
    std::vector<bool> a(f->f.num_vars);
    for (int i = 0; i < f->f.num_vars; ++i) a[i] = assignment[i] != 0;
    return a;
}

pmc::Cut cut_from_ints(const pmc_graph* g, const int* side) {
    pmc::Cut cut;
    cut.side.resize(g->g.vertex_count());
    for (int v = 0; v < g->g.vertex_count(); ++v)
        cut.side[v] = side[v] ? pmc::Side::Y : pmc::Side::X;
    return cut;
}

}  // namespace

extern "C" {

const char* pmc_status_name(pmc_status status) {
    switch (status) {
        case PMC_OK: return "ok";
        case PMC_ERROR_PARSE: return "parse_error";
        case PMC_ERROR_INVALID_ARGUMENT: return "invalid_argument";
        case PMC_ERROR_LIMIT_EXCEEDED: return "limit_exceeded";
        case PMC_ERROR_PRECONDITION: return "precondition_violated";
        case PMC_ERROR_IO: return "io_error";
        case PMC_ERROR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* pmc_last_error(void) { return g_last_error.c_str(); }
const char* pmc_last_error_json(void) { return g_last_error_json.c_str(); }

void pmc_string_free(char* s) { std::free(s); }

pmc_status pmc_graph_parse(const char* text, pmc_graph** out) {
    return guarded([&] { *out = new pmc_graph_s{pmc::parse_graph(text)}; });
}

pmc_status pmc_graph_read_file(const char* path, pmc_graph** out) {
    return guarded([&] {
        std::ifstream in(path);
        if (!in) pmc::fail(pmc::ErrorKind::Io, std::string("cannot open ") + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        *out = new pmc_graph_s{pmc::parse_graph(buf.str())};
    });
}

pmc_status pmc_graph_build(int n, const int* endpoints, int m, pmc_graph** out) {
    return guarded([&] {
        std::vector<pmc::Edge> edges;
        for (int i = 0; i < m; ++i) edges.emplace_back(endpoints[2 * i], endpoints[2 * i + 1]);
        *out = new pmc_graph_s{pmc::Graph::from_edges(n, edges)};
    });
}

pmc_status pmc_graph_generate(const char* kind, int n, int m, unsigned long long seed,
                              pmc_graph** out) {
    return guarded([&] {
        std::string k = kind ? kind : "";
        pmc::Graph g;
        if (k == "path")
            g = pmc::path_graph(n);
        else if (k == "cycle")
            g = pmc::cycle_graph(n);
        else if (k == "cube")
            g = pmc::cube_graph();
        else if (k == "random")
            g = pmc::random_graph(n, m, seed);
        else if (k == "random-connected")
            g = pmc::random_connected_graph(n, m, seed);
        else if (k == "tree")
            g = pmc::random_tree(n, seed);
        else
            pmc::fail(pmc::ErrorKind::InvalidArgument, "unknown generator kind \"" + k + "\"");
        *out = new pmc_graph_s{std::move(g)};
    });
}

void pmc_graph_free(pmc_graph* g) { delete g; }

int pmc_graph_n(const pmc_graph* g) { return g->g.vertex_count(); }
int pmc_graph_m(const pmc_graph* g) { return g->g.edge_count(); }

pmc_status pmc_graph_format(const pmc_graph* g, char** out_text) {
    return guarded([&] { *out_text = dup_string(pmc::format_graph(g->g)); });
}

int pmc_graph_max_degree(const pmc_graph* g) { return pmc::max_degree(g->g); }

int pmc_graph_girth(const pmc_graph* g) { return pmc::girth(g->g).value_or(0); }

int pmc_graph_is_bipartite(const pmc_graph* g) { return pmc::is_bipartite(g->g) ? 1 : 0; }

int pmc_graph_is_connected(const pmc_graph* g) { return pmc::is_connected(g->g) ? 1 : 0; }

int pmc_graph_component_count(const pmc_graph* g) {
    return static_cast<int>(pmc::connected_components(g->g).size());
}

int pmc_graph_is_pseudo_chordal(const pmc_graph* g) {
    return pmc::is_pseudo_chordal(g->g).pseudo_chordal ? 1 : 0;
}

int pmc_graph_is_t_free(const pmc_graph* g, int witness[6]) {
    auto found = pmc::find_induced_t(g->g);
    if (!found) return 1;
    if (witness) {
        auto vs = found->vertices();
        for (int i = 0; i < 6; ++i) witness[i] = vs[i];
    }
    return 0;
}

pmc_status pmc_classify_cut(const pmc_graph* g, const int* side, pmc_cut_class* out) {
    return guarded([&] {
        *out = static_cast<pmc_cut_class>(pmc::classify_cut(g->g, cut_from_ints(g, side)));
    });
}

void pmc_options_init(pmc_options* options) {
    options->algorithm = "auto";
    options->oracle_limit = 0;
    options->threads = 1;
    options->deterministic = 1;
    options->enable_r10 = 0;
}

pmc_status pmc_solve(const pmc_graph* g, const pmc_options* options, pmc_result** out) {
    return guarded([&] {
        pmc::SuiteOptions suite;
        pmc_options defaults;
        pmc_options_init(&defaults);
        const pmc_options* o = options ? options : &defaults;
        auto algo = pmc::algo_from_name(o->algorithm ? o->algorithm : "auto");
        if (!algo)
            pmc::fail(pmc::ErrorKind::InvalidArgument,
                      std::string("unknown algorithm \"") + o->algorithm + "\"");
        suite.algo = *algo;
        if (o->oracle_limit > 0) {
            suite.limits.max_vertices_pmc = o->oracle_limit;
            suite.limits.max_variables_nae = o->oracle_limit;
        }
        suite.branch.threads = o->threads > 0 ? o->threads : 1;
        suite.branch.deterministic = o->deterministic != 0;
        suite.branch.enable_r10 = o->enable_r10 != 0;
        *out = new pmc_result_s{pmc::solve_with(g->g, suite)};
    });
}

void pmc_result_free(pmc_result* r) { delete r; }

int pmc_result_has_pmc(const pmc_result* r) { return r->res.has_pmc ? 1 : 0; }

int pmc_result_certificate(const pmc_result* r, int* side) {
    if (!r->res.certificate) return 0;
    const auto& cut = *r->res.certificate;
    for (size_t v = 0; v < cut.side.size(); ++v) side[v] = cut.side[v] == pmc::Side::Y ? 1 : 0;
    return 1;
}

const char* pmc_result_algorithm(const pmc_result* r) { return r->res.algorithm.c_str(); }

pmc_status pmc_result_stats_json(const pmc_result* r, char** out) {
    return guarded([&] { *out = dup_string(pmc::stats_to_json(r->res.stats)); });
}

pmc_status pmc_enumerate_pmcs(const pmc_graph* g, int max_vertices, pmc_cutset** out) {
    return guarded([&] {
        pmc::OracleLimits limits;
        if (max_vertices > 0) limits.max_vertices_pmc = max_vertices;
        *out = new pmc_cutset_s{pmc::enumerate_pmcs(g->g, limits), g->g.vertex_count()};
    });
}

void pmc_cutset_free(pmc_cutset* c) { delete c; }

long pmc_cutset_count(const pmc_cutset* c) { return static_cast<long>(c->cuts.size()); }

pmc_status pmc_cutset_get(const pmc_cutset* c, long index, int* side) {
    return guarded([&] {
        if (index < 0 || index >= static_cast<long>(c->cuts.size()))
            pmc::fail(pmc::ErrorKind::InvalidArgument, "cut index out of range");
        for (int v = 0; v < c->n; ++v) side[v] = c->cuts[index].side[v] == pmc::Side::Y ? 1 : 0;
    });
}

pmc_status pmc_branching_factor(const int* decreases, int count, double tol, double* out) {
    return guarded([&] {
        pmc::BranchVector v;
        v.decreases.assign(decreases, decreases + count);
        *out = pmc::branching_factor(v, tol);
    });
}

pmc_status pmc_cnf_parse(const char* text, pmc_cnf** out) {
    return guarded([&] { *out = new pmc_cnf_s{pmc::parse_cnf(text)}; });
}

void pmc_cnf_free(pmc_cnf* f) { delete f; }

int pmc_cnf_num_vars(const pmc_cnf* f) { return f->f.num_vars; }
int pmc_cnf_num_clauses(const pmc_cnf* f) { return f->f.num_clauses(); }

pmc_status pmc_nae_brute(const pmc_cnf* f, int max_variables, int* satisfiable, int* assignment) {
    return guarded([&] {
        pmc::OracleLimits limits;
        if (max_variables > 0) limits.max_variables_nae = max_variables;
        auto answer = pmc::nae_brute(f->f, limits);
        *satisfiable = answer.satisfiable ? 1 : 0;
        if (assignment && answer.witness)
            for (int i = 0; i < f->f.num_vars; ++i) assignment[i] = (*answer.witness)[i] ? 1 : 0;
    });
}

pmc_status pmc_reduce_to_graph(const pmc_cnf* f, const char* variant, int girth, int h_override,
                               pmc_graph** out_graph, char** out_map_json) {
    return guarded([&] {
        std::string v = variant ? variant : "basic";
        pmc::Reduction red;
        if (v == "basic")
            red = pmc::reduce_basic(f->f);
        else if (v == "girth")
            red = pmc::reduce_girth(f->f, girth,
                                    h_override >= 0 ? std::optional<int>(h_override) : std::nullopt);
        else
            pmc::fail(pmc::ErrorKind::InvalidArgument, "unknown reduction variant \"" + v + "\"");
        *out_graph = new pmc_graph_s{std::move(red.graph)};
        if (out_map_json) *out_map_json = dup_string(pmc::reduction_map_to_json(red.map));
    });
}

pmc_status pmc_lift_assignment(const pmc_cnf* f, const pmc_graph* g, const char* map_json,
                               const int* assignment, int* side) {
    return guarded([&] {
        auto map = pmc::reduction_map_from_json(map_json);
        auto cut = pmc::lift_assignment(f->f, g->g, map, assignment_from_ints(f, assignment));
        for (int v = 0; v < g->g.vertex_count(); ++v) side[v] = cut.side[v] == pmc::Side::Y ? 1 : 0;
    });
}

pmc_status pmc_extract_assignment(const pmc_cnf* f, const pmc_graph* g, const char* map_json,
                                  const int* side, int* assignment) {
    return guarded([&] {
        auto map = pmc::reduction_map_from_json(map_json);
        auto a = pmc::extract_assignment(f->f, g->g, map, cut_from_ints(g, side));
        for (int i = 0; i < f->f.num_vars; ++i) assignment[i] = a[i] ? 1 : 0;
    });
}

pmc_status pmc_verify_reduction(const pmc_cnf* f, const char* variant, int girth, int h_override,
                                char** out_report_json) {
    return guarded([&] {
        auto report = pmc::verify_reduction(
            f->f, variant ? variant : "basic", girth,
            h_override >= 0 ? std::optional<int>(h_override) : std::nullopt);
        ordered_json j = ordered_json::array();
        for (const auto& item : report.items) {
            ordered_json e;
            e["name"] = item.name;
            e["pass"] = item.pass;
            e["detail"] = item.detail;
            j.push_back(std::move(e));
        }
        *out_report_json = dup_string(j.dump(2) + "\n");
    });
}

}  // extern "C"
