#include <stdio.h>
#include <string.h>
#include "logderiv.h"

static const char *PENCIL = "2 3\n1 0\n0 1\n1 -1\n";

int main(void) {
    LdArrangement *a = NULL;
    if (ld_arrangement_parse(PENCIL, &a) != LD_STATUS_OK) return 10;
    if (ld_arrangement_dim(a) != 2 || ld_arrangement_len(a) != 3) return 11;

    size_t dim = 0;
    if (ld_graded_dim(a, 2, &dim) != LD_STATUS_OK || dim != 3) return 12;

    LdFreeness verdict;
    uint32_t exps[4];
    size_t count = 0;
    if (ld_free_check(a, 4, &verdict, exps, 4, &count) != LD_STATUS_OK) return 13;
    if (verdict != LD_FREENESS_FREE || count != 2 || exps[0] != 1 || exps[1] != 2) return 14;

    LdDerivation *d = NULL;
    if (ld_derivation_parse(a, "x1^2\nx2^2\n", &d) != LD_STATUS_OK) return 15;
    int32_t log = 0;
    if (ld_is_logarithmic(a, d, &log) != LD_STATUS_OK || log != 1) return 16;
    char *k = NULL;
    if (ld_k_vector(a, d, &k) != LD_STATUS_OK) return 17;
    if (strcmp(k, "x1\nx2\nx1 + x2") != 0) return 18;
    ld_string_free(k);
    ld_derivation_free(d);

    LdArrangement *bad = NULL;
    if (ld_arrangement_parse("2 2\n1 0\n2 0\n", &bad) == LD_STATUS_OK) return 19;
    if (ld_last_error() == NULL) return 20;

    ld_arrangement_free(a);
    puts("ok");
    return 0;
}
