/* Compiles as plain C against pmc.h and drives one solve end to end. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "pmc.h"

int main(void) {
    pmc_graph *g = NULL;
    if (pmc_graph_parse("4 4\n1 2\n2 3\n3 4\n1 4\n", &g) != PMC_OK) {
        fprintf(stderr, "parse: %s\n", pmc_last_error());
        return 1;
    }

    pmc_options options;
    pmc_options_init(&options);
    pmc_result *res = NULL;
    if (pmc_solve(g, &options, &res) != PMC_OK) {
        fprintf(stderr, "solve: %s\n", pmc_last_error());
        return 1;
    }
    if (!pmc_result_has_pmc(res)) {
        fprintf(stderr, "C4 should have a perfect matching cut\n");
        return 1;
    }

    int side[4];
    if (!pmc_result_certificate(res, side)) return 1;
    pmc_cut_class cls;
    if (pmc_classify_cut(g, side, &cls) != PMC_OK || cls != PMC_PERFECT_MATCHING_CUT) {
        fprintf(stderr, "certificate did not verify\n");
        return 1;
    }

    pmc_result_free(res);
    pmc_graph_free(g);
    printf("capi smoke ok\n");
    return 0;
}
