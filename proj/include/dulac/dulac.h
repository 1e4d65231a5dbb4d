/* Copyright 2026 The Dulac Engine Authors */
/* SPDX-License-Identifier: Apache-2.0 */

/*
 * C interface to the Dulac engine. Values cross the boundary as opaque
 * handles or as text in the grammar of docs/grammar.ebnf. Exact rationals
 * are passed as "p" or "p/q" strings.
 *
 * Every function returns a dulac_status. On failure the message of the last
 * error on the calling thread is available from dulac_last_error() and
 * output parameters are left untouched. Strings returned through char **
 * are owned by the caller and released with dulac_string_free().
 */

#ifndef DULAC_DULAC_H
#define DULAC_DULAC_H

#include <stddef.h>

#if defined(_WIN32)
#define DULAC_API __declspec(dllexport)
#else
#define DULAC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dulac_status {
    DULAC_OK = 0,
    DULAC_ERR_SYNTAX = 1,
    DULAC_ERR_SEMANTIC = 2,
    DULAC_ERR_DOMAIN = 3,
    DULAC_ERR_PRECISION = 4,
    DULAC_ERR_RANGE = 5,
    DULAC_ERR_UNSUPPORTED = 6,
    DULAC_ERR_INVALID_ARGUMENT = 7,
    DULAC_ERR_INTERNAL = 8
} dulac_status;

typedef struct dulac_series dulac_series;               /* generalized exponential series */
typedef struct dulac_star dulac_star;                   /* level-1 series */
typedef struct dulac_word dulac_word;                   /* composition word */
typedef struct dulac_polycycle dulac_polycycle;         /* polycycle description */
typedef struct dulac_decomposition dulac_decomposition; /* additive decomposition */

DULAC_API const char *dulac_version(void);
DULAC_API const char *dulac_status_name(dulac_status status);
DULAC_API const char *dulac_last_error(void);
/* Byte offset of the last syntax error, or -1. */
DULAC_API long dulac_last_error_position(void);
DULAC_API void dulac_string_free(char *s);

/* Series */
DULAC_API dulac_status dulac_series_parse(const char *text, dulac_series **out);
DULAC_API dulac_status dulac_series_print(const dulac_series *s, char **out);
DULAC_API void dulac_series_free(dulac_series *s);
DULAC_API dulac_status dulac_series_add(const dulac_series *a, const dulac_series *b, dulac_series **out);
DULAC_API dulac_status dulac_series_mul(const dulac_series *a, const dulac_series *b, dulac_series **out);
/* Decimal value at zeta with the given working precision. */
DULAC_API dulac_status dulac_series_eval(const dulac_series *s, const char *zeta, unsigned bits, char **out);

/* Deviation of f^log for f(z) = alpha z + sum tail[q] z^{q+2}; tail is a
   comma-separated list of rationals (may be empty). The affine part is
   returned as an aff(...) atom. */
DULAC_API dulac_status dulac_flowbox_expand(const char *alpha, const char *tail, const char *order,
                                            dulac_series **deviation, char **affine);

/* Maps zeta -> zeta + deviation. floor may be NULL when a floor is implied. */
DULAC_API dulac_status dulac_logmap_compose(const dulac_series *f, const dulac_series *g, const char *floor,
                                            dulac_series **out);
DULAC_API dulac_status dulac_logmap_invert(const dulac_series *f, const char *floor, dulac_series **out);
/* a o f o a^{-1} with a(zeta) = alpha zeta + beta; beta in log-linear text. */
DULAC_API dulac_status dulac_logmap_conjugate(const char *alpha, const char *beta, const dulac_series *f,
                                              dulac_series **out);
/* Deviation of ln o f o exp, terms down to principal exponent -c_max. */
DULAC_API dulac_status dulac_logmap_exp_conjugate(const dulac_series *f, const char *c_max, dulac_star **out);

/* Level-1 series */
DULAC_API dulac_status dulac_star_parse(const char *text, dulac_star **out);
DULAC_API dulac_status dulac_star_print(const dulac_star *s, char **out);
DULAC_API void dulac_star_free(dulac_star *s);
DULAC_API dulac_status dulac_star_normal_form(const dulac_star *s, dulac_star **out);
/* *valid is 1 or 0; report describes the witness. */
DULAC_API dulac_status dulac_star_validity(const dulac_star *s, int *valid, char **report);
/* *certified is 1 when a lower bound was certified, 0 otherwise;
   *gap is 1 when a coefficient left its class. */
DULAC_API dulac_status dulac_star_lower_bound(const dulac_star *s, int *certified, int *gap, char **report);
DULAC_API dulac_status dulac_star_eval(const dulac_star *s, const char *zeta, unsigned bits, char **out);

/* Words and polycycles */
DULAC_API dulac_status dulac_word_parse(const char *text, dulac_word **out);
DULAC_API dulac_status dulac_word_print(const dulac_word *w, char **out);
DULAC_API void dulac_word_free(dulac_word *w);
DULAC_API dulac_status dulac_polycycle_parse(const char *text, dulac_polycycle **out);
DULAC_API dulac_status dulac_polycycle_print(const dulac_polycycle *p, char **out);
DULAC_API void dulac_polycycle_free(dulac_polycycle *p);
DULAC_API dulac_status dulac_polycycle_compile(const dulac_polycycle *p, const char *order, dulac_word **out);

/* Decomposition; any of the order strings may be NULL for the default. */
DULAC_API dulac_status dulac_decompose(const dulac_word *w, const char *c_max, const char *coeff_floor,
                                       const char *level0_floor, dulac_decomposition **out);
DULAC_API dulac_status dulac_decomposition_print(const dulac_decomposition *d, char **out);
DULAC_API void dulac_decomposition_free(dulac_decomposition *d);
DULAC_API size_t dulac_decomposition_level1_count(const dulac_decomposition *d);
/* Scale (as text) and grading of the i-th level-1 body. */
DULAC_API dulac_status dulac_decomposition_level1(const dulac_decomposition *d, size_t i, char **scale, int *grading);
/* Leading term of Delta - id when every scale is 1; sign in {-1, 0, 1}. */
DULAC_API dulac_status dulac_decomposition_leading_term(const dulac_decomposition *d, int *sign, char **report);

/* Numeric oracle. grid is a comma-separated list of rationals; NULL selects
   the default grid for the level of the check. */
DULAC_API dulac_status dulac_word_eval(const dulac_word *w, const char *zeta, unsigned bits, char **value,
                                       char **deviation);
DULAC_API dulac_status dulac_certify_series(const dulac_word *w, const dulac_series *s, const char *cutoff,
                                            const char *grid, unsigned bits, const char *epsilon, int *pass,
                                            char **report);
DULAC_API dulac_status dulac_certify_star(const dulac_word *w, const dulac_star *s, const char *cutoff,
                                          const char *grid, unsigned bits, const char *epsilon, int *pass,
                                          char **report);
DULAC_API dulac_status dulac_fit_flatness(const dulac_word *w, const char *grid, unsigned bits, double *sigma,
                                          double *lambda, char **report);

/* Pipelines. *outcome is 1 when the gap is reproduced (counterexample) or
   when the bound is certified and the signs agree (positive case). */
DULAC_API dulac_status dulac_run_counterexample(const char *order, const char *grid, unsigned bits, int *outcome,
                                                char **report);
DULAC_API dulac_status dulac_run_positive(const dulac_word *w, const char *zeta, unsigned bits, int *outcome,
                                          char **report);

#ifdef __cplusplus
}
#endif

#endif
