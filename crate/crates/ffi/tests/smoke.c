#include <stdio.h>
#include "crossing_critical.h"

int main(void) {
    CcgGraph *g = NULL;
    if (ccg_graph_new(5, &g) != CCG_STATUS_OK) return 1;
    for (size_t a = 0; a < 5; a++)
        for (size_t b = a + 1; b < 5; b++)
            if (ccg_graph_add_edge(g, a, b, NULL) != CCG_STATUS_OK) return 2;

    size_t cr = 0;
    if (ccg_crossing_number(g, -1, &cr) != CCG_STATUS_OK) return 3;
    printf("cr(K5) = %zu\n", cr);

    CcgVerdict v;
    if (ccg_is_critical(g, 1, -1, &v) != CCG_STATUS_OK || v != CCG_VERDICT_CRITICAL) return 4;

    char *code = NULL;
    if (ccg_canonical_code(g, &code) != CCG_STATUS_OK) return 5;
    printf("code %s\n", code);
    ccg_string_free(code);

    CcgGraph *bad = NULL;
    if (ccg_graph_parse("1 1\n0 0 5\n", &bad) == CCG_STATUS_OK) return 6;
    printf("error: %s\n", ccg_last_error());

    ccg_graph_free(g);
    return 0;
}
