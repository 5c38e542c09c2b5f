#ifndef MARKOV_H
#define MARKOV_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Binary operation selector for [`markov_quad_arith`].
 */
typedef enum MarkovOp {
  MARKOV_OP_ADD = 0,
  MARKOV_OP_SUB = 1,
  MARKOV_OP_MUL = 2,
  MARKOV_OP_DIV = 3,
} MarkovOp;

/**
 * Result codes.
 */
typedef enum MarkovStatus {
  MARKOV_STATUS_OK = 0,
  MARKOV_STATUS_NULL_POINTER = 1,
  MARKOV_STATUS_INVALID_UTF8 = 2,
  MARKOV_STATUS_PARSE = 3,
  MARKOV_STATUS_INVALID_ARGUMENT = 4,
  MARKOV_STATUS_NOT_MARKOV = 5,
  MARKOV_STATUS_ARITHMETIC = 6,
  MARKOV_STATUS_DOMAIN = 7,
  MARKOV_STATUS_PANIC = 99,
} MarkovStatus;

/**
 * A binary quadratic form `A p^2 + 2B pq + C q^2`.
 */
typedef struct MarkovForm MarkovForm;

/**
 * An exact number `r + s sqrt(D)`.
 */
typedef struct MarkovQuad MarkovQuad;

/**
 * A Markov triple `(a, b, c)`.
 */
typedef struct MarkovTriple MarkovTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *markov_last_error(void);

/**
 * Library version as a static string.
 */
const char *markov_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void markov_string_free(char *s);

/**
 * Builds a triple from decimal strings.
 *
 * # Safety
 * Arguments must be NUL-terminated strings; `out` must be writable.
 */
enum MarkovStatus markov_triple_new(const char *a,
                                    const char *b,
                                    const char *c,
                                    struct MarkovTriple **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MarkovStatus markov_triple_from_u64(uint64_t a,
                                         uint64_t b,
                                         uint64_t c,
                                         struct MarkovTriple **out);

/**
 * # Safety
 * `t` must be NULL or a handle from this library, freed at most once.
 */
void markov_triple_free(struct MarkovTriple *t);

/**
 * The neighbour across move `k` in 1..=3.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_triple_involution(const struct MarkovTriple *t,
                                           int k,
                                           struct MarkovTriple **out);

/**
 * Component `i` in 0..=2 as a decimal string.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_triple_component(const struct MarkovTriple *t, int i, char **out);

/**
 * The Markov irrational `x` of the sorted triple.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_triple_x(const struct MarkovTriple *t, struct MarkovQuad **out);

/**
 * `L(x) = sqrt(9 c^2 - 4) / c` for the sorted triple.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_triple_lambda(const struct MarkovTriple *t, struct MarkovQuad **out);

/**
 * The Markov form of the sorted triple.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_triple_form(const struct MarkovTriple *t, struct MarkovForm **out);

/**
 * Parses expressions such as `"1/2 + 1/2*sqrt(5)"`.
 *
 * # Safety
 * `s` must be a NUL-terminated string; `out` must be writable.
 */
enum MarkovStatus markov_quad_parse(const char *s, struct MarkovQuad **out);

/**
 * # Safety
 * `q` must be NULL or a handle from this library, freed at most once.
 */
void markov_quad_free(struct MarkovQuad *q);

/**
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_quad_to_string(const struct MarkovQuad *q, char **out);

/**
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_quad_to_f64(const struct MarkovQuad *q, double *out);

/**
 * `out = a op b`. Operands must share a quadratic field.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum MarkovStatus markov_quad_arith(const struct MarkovQuad *a,
                                    enum MarkovOp op,
                                    const struct MarkovQuad *b,
                                    struct MarkovQuad **out);

/**
 * Exact comparison; writes -1, 0 or 1.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum MarkovStatus markov_quad_cmp(const struct MarkovQuad *a, const struct MarkovQuad *b, int *out);

/**
 * Periodic continued fraction as `"[a0, ...; (b0, ...)]"`.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_quad_continued_fraction(const struct MarkovQuad *q, char **out);

/**
 * Lagrange number of a quadratic irrational.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_quad_lagrange_number(const struct MarkovQuad *q, struct MarkovQuad **out);

/**
 * Number of reduced `p/q` with `q <= q_max` and `|x - p/q| < 1/(lambda q^2)`.
 *
 * # Safety
 * `x` and `lambda` must be live handles; `out` must be writable.
 */
enum MarkovStatus markov_count_approximations(const struct MarkovQuad *x,
                                              const struct MarkovQuad *lambda,
                                              uint64_t q_max,
                                              size_t *out);

/**
 * Parses `"A,2B,C"`.
 *
 * # Safety
 * `s` must be a NUL-terminated string; `out` must be writable.
 */
enum MarkovStatus markov_form_parse(const char *s, struct MarkovForm **out);

/**
 * # Safety
 * `f` must be NULL or a handle from this library, freed at most once.
 */
void markov_form_free(struct MarkovForm *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_form_to_string(const struct MarkovForm *f, char **out);

/**
 * `M(f) = min |f| / sqrt(|det f|)` over lattice points with `|p|, |q| <= bound`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum MarkovStatus markov_form_lattice_min(const struct MarkovForm *f,
                                          uint64_t bound,
                                          struct MarkovQuad **out);

/**
 * SVG of the Ford circles and Farey tessellation over `[lo, hi]`.
 *
 * # Safety
 * `lo` and `hi` must be NUL-terminated rationals; `out` must be writable.
 */
enum MarkovStatus markov_render_svg(uint64_t q_max, const char *lo, const char *hi, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MARKOV_H */
