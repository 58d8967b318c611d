/*
 * pmc: perfect matching cut solver suite.
 *
 * C API of libpmc. Objects are opaque handles created and destroyed by the
 * library; functions return PMC_OK or an error code, with a thread-local
 * message available from pmc_last_error(). Vertices are 0-based here;
 * on-disk formats are 1-based.
 */
#ifndef PMC_H
#define PMC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmc_status {
    PMC_OK = 0,
    PMC_ERROR_PARSE = 1,
    PMC_ERROR_INVALID_ARGUMENT = 2,
    PMC_ERROR_LIMIT_EXCEEDED = 3,
    PMC_ERROR_PRECONDITION = 4,
    PMC_ERROR_IO = 5,
    PMC_ERROR_INTERNAL = 6
} pmc_status;

const char *pmc_status_name(pmc_status status);

/* Message for the most recent failure on this thread; also available as a
 * JSON object {"status", "message", and optionally "witness"} with 1-based
 * vertex ids. Valid until the next failing call on the same thread. */
const char *pmc_last_error(void);
const char *pmc_last_error_json(void);

void pmc_string_free(char *s);

/* ------------------------------------------------------------------ graphs */

typedef struct pmc_graph_s pmc_graph;

/* Edge-list document: "n m" header, then m lines "u v", 1 <= u < v <= n,
 * '#' comments allowed. */
pmc_status pmc_graph_parse(const char *text, pmc_graph **out);
pmc_status pmc_graph_read_file(const char *path, pmc_graph **out);
/* endpoints: 2*m ints, 0-based, pairs (u, v). */
pmc_status pmc_graph_build(int n, const int *endpoints, int m, pmc_graph **out);
/* kinds: "path" (n), "cycle" (n), "cube", "random" (n, m, seed),
 * "random-connected" (n, m, seed), "tree" (n, seed). */
pmc_status pmc_graph_generate(const char *kind, int n, int m, unsigned long long seed,
                              pmc_graph **out);
void pmc_graph_free(pmc_graph *g);

int pmc_graph_n(const pmc_graph *g);
int pmc_graph_m(const pmc_graph *g);
pmc_status pmc_graph_format(const pmc_graph *g, char **out_text);

int pmc_graph_max_degree(const pmc_graph *g);
/* 0 means acyclic */
int pmc_graph_girth(const pmc_graph *g);
int pmc_graph_is_bipartite(const pmc_graph *g);
int pmc_graph_is_connected(const pmc_graph *g);
int pmc_graph_component_count(const pmc_graph *g);
int pmc_graph_is_pseudo_chordal(const pmc_graph *g);
/* witness (may be NULL): the six vertices of an induced subdivided claw */
int pmc_graph_is_t_free(const pmc_graph *g, int witness[6]);

/* -------------------------------------------------------------------- cuts */

typedef enum pmc_cut_class {
    PMC_NOT_A_CUT = 0,
    PMC_CUT = 1,
    PMC_MATCHING_CUT = 2,
    PMC_PERFECT_MATCHING_CUT = 3
} pmc_cut_class;

/* side: n entries, 0 = X, 1 = Y */
pmc_status pmc_classify_cut(const pmc_graph *g, const int *side, pmc_cut_class *out);

/* ----------------------------------------------------------------- solving */

typedef struct pmc_result_s pmc_result;

typedef struct pmc_options_s {
    const char *algorithm; /* auto | oracle | branch | tfree | pseudochordal | deg2 */
    int oracle_limit;      /* <= 0: default (24) */
    int threads;           /* <= 0: 1 */
    int deterministic;     /* report the lowest successful seed edge */
    int enable_r10;        /* extra reduction in the branch solver */
} pmc_options;

void pmc_options_init(pmc_options *options);
pmc_status pmc_solve(const pmc_graph *g, const pmc_options *options, pmc_result **out);
void pmc_result_free(pmc_result *r);

int pmc_result_has_pmc(const pmc_result *r);
/* fills side (n entries) and returns 1 when a certificate is present */
int pmc_result_certificate(const pmc_result *r, int *side);
const char *pmc_result_algorithm(const pmc_result *r);
pmc_status pmc_result_stats_json(const pmc_result *r, char **out);

/* ------------------------------------------------------------------ oracle */

typedef struct pmc_cutset_s pmc_cutset;

/* All perfect matching cuts, vertex 0 on side X, lexicographic order. */
pmc_status pmc_enumerate_pmcs(const pmc_graph *g, int max_vertices, pmc_cutset **out);
void pmc_cutset_free(pmc_cutset *c);
long pmc_cutset_count(const pmc_cutset *c);
pmc_status pmc_cutset_get(const pmc_cutset *c, long index, int *side);

/* ------------------------------------------------------- branching vectors */

/* Root of the branching-vector characteristic polynomial, bisected to tol. */
pmc_status pmc_branching_factor(const int *decreases, int count, double tol, double *out);

/* -------------------------------------------------- formulas and reductions */

typedef struct pmc_cnf_s pmc_cnf;

/* DIMACS CNF, positive literals, width-3 clauses with distinct variables. */
pmc_status pmc_cnf_parse(const char *text, pmc_cnf **out);
void pmc_cnf_free(pmc_cnf *f);
int pmc_cnf_num_vars(const pmc_cnf *f);
int pmc_cnf_num_clauses(const pmc_cnf *f);

/* assignment (may be NULL): n entries, 1 = true, the lexicographically first
 * not-all-equal assignment */
pmc_status pmc_nae_brute(const pmc_cnf *f, int max_variables, int *satisfiable, int *assignment);

/* variant "basic" or "girth"; girth/h_override ignored for basic, h_override
 * < 0 picks the smallest valid h. The map JSON uses 1-based vertex ids. */
pmc_status pmc_reduce_to_graph(const pmc_cnf *f, const char *variant, int girth, int h_override,
                               pmc_graph **out_graph, char **out_map_json);
pmc_status pmc_lift_assignment(const pmc_cnf *f, const pmc_graph *g, const char *map_json,
                               const int *assignment, int *side);
pmc_status pmc_extract_assignment(const pmc_cnf *f, const pmc_graph *g, const char *map_json,
                                  const int *side, int *assignment);
/* report: JSON array of {"name", "pass", "detail"} */
pmc_status pmc_verify_reduction(const pmc_cnf *f, const char *variant, int girth, int h_override,
                                char **out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* PMC_H */
