#include <stdio.h>
#include <string.h>
#include "markov.h"

#define CHECK(call)                                                       \
    do {                                                                  \
        MarkovStatus s_ = (call);                                         \
        if (s_ != MARKOV_STATUS_OK) {                                     \
            fprintf(stderr, "%s -> %d: %s\n", #call, s_, markov_last_error()); \
            return 1;                                                     \
        }                                                                 \
    } while (0)

int main(void) {
    MarkovTriple *t = NULL, *u = NULL;
    MarkovQuad *x = NULL, *l = NULL, *lam = NULL;
    char *s = NULL;
    int cmp = 2;

    CHECK(markov_triple_from_u64(1, 5, 13, &t));
    CHECK(markov_triple_involution(t, 1, &u));
    CHECK(markov_triple_component(u, 0, &s));
    printf("a=%s\n", s);
    markov_string_free(s);

    CHECK(markov_triple_x(t, &x));
    CHECK(markov_quad_lagrange_number(x, &l));
    CHECK(markov_triple_lambda(t, &lam));
    CHECK(markov_quad_cmp(l, lam, &cmp));
    CHECK(markov_quad_to_string(l, &s));
    printf("L=%s cmp=%d\n", s, cmp);
    markov_string_free(s);

    if (markov_triple_from_u64(1, 1, 3, &t) != MARKOV_STATUS_NOT_MARKOV) return 2;
    printf("err=%s\n", markov_last_error());

    markov_quad_free(x);
    markov_quad_free(l);
    markov_quad_free(lam);
    markov_triple_free(u);
    markov_triple_free(t);
    return 0;
}
