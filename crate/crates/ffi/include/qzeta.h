#ifndef QZETA_H
#define QZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a fallible call.
 */
typedef enum QzStatus {
  QZ_STATUS_OK = 0,
  QZ_STATUS_NULL_POINTER = 1,
  QZ_STATUS_INVALID_UTF8 = 2,
  QZ_STATUS_PARSE = 3,
  QZ_STATUS_DOMAIN = 4,
  QZ_STATUS_PANIC = 5,
} QzStatus;

/**
 * Output format for [`qz_zeta_to_string`].
 */
typedef enum QzFormat {
  QZ_FORMAT_TEXT = 0,
  QZ_FORMAT_LATEX = 1,
  QZ_FORMAT_JSON = 2,
} QzFormat;

/**
 * A diagonal abelian group action.
 */
typedef struct QzGroup QzGroup;

/**
 * A zeta function together with the Euler characteristics of its symbols.
 */
typedef struct QzZeta QzZeta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *qz_last_error_message(void);

/**
 * Parses a group literal such as `(7; 1,3)`.
 *
 * # Safety
 * `literal` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QzStatus qz_group_new(const char *literal, struct QzGroup **out);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a handle from [`qz_group_new`].
 */
uint64_t qz_group_order(const struct QzGroup *g);

/**
 * # Safety
 * `g` must be null or a handle from [`qz_group_new`].
 */
size_t qz_group_dimension(const struct QzGroup *g);

/**
 * # Safety
 * `g` must be null or a handle from [`qz_group_new`].
 */
bool qz_group_is_small(const struct QzGroup *g);

/**
 * # Safety
 * `g` must be null or a handle from [`qz_group_new`] not freed before.
 */
void qz_group_free(struct QzGroup *g);

/**
 * Zeta function of the monomial divisor with data `n`, `nu` (comma
 * separated rationals such as `1,3/2`) on the quotient by `g`.
 *
 * # Safety
 * `g` must be a valid handle, `n` and `nu` NUL-terminated strings, `out` a valid pointer.
 */
enum QzStatus qz_zeta_monomial(const struct QzGroup *g,
                               const char *n,
                               const char *nu,
                               bool allow_nonsmall,
                               struct QzZeta **out);

/**
 * Zeta function of the stratification described by a strata file.
 *
 * # Safety
 * `text_in` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QzStatus qz_zeta_from_strata(const char *text_in, struct QzZeta **out);

/**
 * Renders the zeta function; release the result with [`qz_string_free`].
 *
 * # Safety
 * `z` must be a valid handle and `out` a valid pointer.
 */
enum QzStatus qz_zeta_to_string(const struct QzZeta *z, enum QzFormat format, char **out);

/**
 * The topological zeta function as text such as `7 / (s + 1)^2`.
 *
 * # Safety
 * `z` must be a valid handle and `out` a valid pointer.
 */
enum QzStatus qz_zeta_topological(const struct QzZeta *z, char **out);

/**
 * Exact equality as rational functions.
 *
 * # Safety
 * `a`, `b` must be valid handles and `out` a valid pointer.
 */
enum QzStatus qz_zeta_equal(const struct QzZeta *a, const struct QzZeta *b, bool *out);

/**
 * # Safety
 * `z` must be null or a handle not freed before.
 */
void qz_zeta_free(struct QzZeta *z);

/**
 * # Safety
 * `s` must be null or a string returned by this library not freed before.
 */
void qz_string_free(char *s);

/**
 * Stringy Euler number `(d^2 + 8 beta) / 3` of `C^3 / G_{d,q}`; requires `d | q^3 + 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QzStatus qz_tetra_stringy_euler(uint64_t d, uint64_t q, uint64_t *out);

/**
 * Number of conjugacy classes of `G_{d,q}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QzStatus qz_tetra_conjugacy_count(uint64_t d, uint64_t q, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QZETA_H */
