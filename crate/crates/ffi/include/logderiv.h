#ifndef LOGDERIV_H
#define LOGDERIV_H

#include <stddef.h>
#include <stdint.h>

/**
 * Freeness verdicts reported by [`ld_free_check`].
 */
enum LdFreeness
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  LD_FREENESS_FREE = 0,
  LD_FREENESS_NOT_FREE = 1,
  LD_FREENESS_INCONCLUSIVE = 2,
};
#ifndef __cplusplus
typedef int32_t LdFreeness;
#endif // __cplusplus

/**
 * Status codes. Zero is success.
 */
enum LdStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  LD_STATUS_OK = 0,
  LD_STATUS_NULL_POINTER = 1,
  LD_STATUS_INVALID_UTF8 = 2,
  LD_STATUS_PANIC = 3,
  LD_STATUS_PARSE_ERROR = 10,
  LD_STATUS_DIMENSION_MISMATCH = 11,
  LD_STATUS_ZERO_FORM = 12,
  LD_STATUS_DUPLICATE_HYPERPLANE = 13,
  LD_STATUS_NON_ESSENTIAL = 14,
  LD_STATUS_NOT_LOGARITHMIC = 15,
  LD_STATUS_NOT_CANONICAL = 16,
  LD_STATUS_ZERO_PIVOT = 17,
  LD_STATUS_INDEX_OUT_OF_RANGE = 18,
  LD_STATUS_DEPENDENT_BASIS = 19,
  LD_STATUS_NON_SQUARE = 20,
  LD_STATUS_UNVERIFIED_SOLUTION = 21,
  LD_STATUS_UNVERIFIED_CRITICAL_POINT = 22,
  LD_STATUS_LATTICE_MISMATCH = 23,
  LD_STATUS_SIZE_MISMATCH = 24,
  LD_STATUS_SHIFT_EULER = 25,
  LD_STATUS_MISSING_EULER = 26,
};
#ifndef __cplusplus
typedef int32_t LdStatus;
#endif // __cplusplus

/**
 * Opaque arrangement handle.
 */
typedef struct LdArrangement LdArrangement;

/**
 * Opaque derivation handle.
 */
typedef struct LdDerivation LdDerivation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Owned by the
 * library and valid until the next call on the same thread.
 */
const char *ld_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ld_string_free(char *s);

/**
 * Parses an arrangement in `.arr` text form.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
LdStatus ld_arrangement_parse(const char *text, struct LdArrangement **out);

/**
 * # Safety
 * `a` must come from [`ld_arrangement_parse`] and not have been freed.
 */
void ld_arrangement_free(struct LdArrangement *a);

/**
 * Ambient dimension, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t ld_arrangement_dim(const struct LdArrangement *a);

/**
 * Number of hyperplanes, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t ld_arrangement_len(const struct LdArrangement *a);

/**
 * Parses a derivation, one coordinate polynomial per line, in the
 * variables of `a`.
 *
 * # Safety
 * `a` must be a live handle, `text` NUL-terminated, `out` writable.
 */
LdStatus ld_derivation_parse(const struct LdArrangement *a,
                             const char *text,
                             struct LdDerivation **out);

/**
 * # Safety
 * `d` must come from this library and not have been freed.
 */
void ld_derivation_free(struct LdDerivation *d);

/**
 * Writes the derivation in `.der` text form to `out`.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
LdStatus ld_derivation_to_string(const struct LdDerivation *d, char **out);

/**
 * Sets `out` to 1 when every `alpha_i` divides `theta(alpha_i)`, else 0.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
LdStatus ld_is_logarithmic(const struct LdArrangement *a,
                           const struct LdDerivation *d,
                           int32_t *out);

/**
 * Writes the quotients `k_i = theta(alpha_i) / alpha_i`, one per line.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
LdStatus ld_k_vector(const struct LdArrangement *a, const struct LdDerivation *d, char **out);

/**
 * Dimension of the degree-`degree` homogeneous part of `D(A)`.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
LdStatus ld_graded_dim(const struct LdArrangement *a, uint32_t degree, size_t *out);

/**
 * Degree-bounded freeness check. On a `Free` verdict the exponents are
 * written to `exponents` (capacity `capacity`, which must be at least the
 * dimension) and their count to `count`; otherwise `count` is 0.
 *
 * # Safety
 * `a` must be a live handle; `verdict` and `count` writable; `exponents`
 * writable for `capacity` entries or null when `capacity` is 0.
 */
LdStatus ld_free_check(const struct LdArrangement *a,
                       uint32_t max_degree,
                       LdFreeness *verdict,
                       uint32_t *exponents,
                       size_t capacity,
                       size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOGDERIV_H */
