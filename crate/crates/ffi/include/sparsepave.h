/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef SPARSEPAVE_H
#define SPARSEPAVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `SPM_STATUS_OK` is zero; everything else is a failure.
 */
typedef enum SpmStatus {
  SPM_STATUS_OK = 0,
  SPM_STATUS_NULL_POINTER = 1,
  SPM_STATUS_INVALID_ARGUMENT = 2,
  SPM_STATUS_NOT_STABLE = 3,
  SPM_STATUS_NO_BASIS = 4,
  SPM_STATUS_PARSE_ERROR = 5,
  SPM_STATUS_BUDGET_EXCEEDED = 6,
  SPM_STATUS_OVERFLOW = 7,
  SPM_STATUS_PANIC = 8,
} SpmStatus;

/**
 * Opaque handle to a sparse paving matroid.
 */
typedef struct SpmMatroid SpmMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a matroid of rank `r` on `[n]` from `count` non-basis bitmasks.
 * On success `*out` owns a new handle; release it with `spm_matroid_free`.
 *
 * # Safety
 * `nonbases` must point to `count` readable values (it may be null when
 * `count` is 0) and `out` must be writable.
 */
enum SpmStatus spm_matroid_new(uint32_t n,
                               uint32_t r,
                               const uint64_t *nonbases,
                               size_t count,
                               struct SpmMatroid **out);

/**
 * Parses the text format (`n=<int> r=<int>` header, one non-basis per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum SpmStatus spm_matroid_parse(const char *text, struct SpmMatroid **out);

/**
 * Canonical text form. Release the string with `spm_string_free`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum SpmStatus spm_matroid_to_string(const struct SpmMatroid *m, char **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void spm_matroid_free(struct SpmMatroid *m);

/**
 * Ground set size, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
uint32_t spm_matroid_n(const struct SpmMatroid *m);

/**
 * Rank, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
uint32_t spm_matroid_rank(const struct SpmMatroid *m);

/**
 * Number of non-bases, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t spm_matroid_nonbasis_count(const struct SpmMatroid *m);

/**
 * Copies up to `capacity` non-basis bitmasks into `buffer`, in ascending
 * bitmask order, and returns the total number of non-bases.
 *
 * # Safety
 * `m` must be null or a live handle; `buffer` must hold `capacity` values
 * (it may be null when `capacity` is 0).
 */
size_t spm_matroid_nonbases(const struct SpmMatroid *m, uint64_t *buffer, size_t capacity);

/**
 * Rank of an arbitrary subset of the ground set.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum SpmStatus spm_matroid_rank_of(const struct SpmMatroid *m, uint64_t set, uint32_t *out);

/**
 * The rank-3 whirl on six elements. Release with `spm_matroid_free`.
 */
struct SpmMatroid *spm_whirl3(void);

/**
 * The uniform matroid `U_{t,k}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpmStatus spm_uniform(uint32_t t, uint32_t k, struct SpmMatroid **out);

/**
 * Whether `h` is a minor of `m`. `budget` caps the number of
 * contraction/restriction pairs tried; 0 selects the library default.
 *
 * # Safety
 * `m` and `h` must be live handles and `found` writable.
 */
enum SpmStatus spm_has_minor(const struct SpmMatroid *m,
                             const struct SpmMatroid *h,
                             uint64_t budget,
                             bool *found);

/**
 * Whether `U_{t,k}` is a minor of `m`.
 *
 * # Safety
 * `m` must be a live handle and `found` writable.
 */
enum SpmStatus spm_has_uniform_minor(const struct SpmMatroid *m,
                                     uint32_t t,
                                     uint32_t k,
                                     bool *found);

/**
 * Exact number of sparse paving matroids of rank `r` on `[n]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpmStatus spm_count_sparse_paving(uint32_t n, uint32_t r, uint64_t *out);

/**
 * Message for the last failure on this thread, or null if the last call
 * succeeded. Valid until the next call into the library on this thread.
 */
const char *spm_last_error_message(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from `spm_matroid_to_string` not yet freed.
 */
void spm_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *spm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPARSEPAVE_H */
