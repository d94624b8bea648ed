#ifndef PBWBASIS_H
#define PBWBASIS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum {
  /**
   * Success.
   */
  PbwStatus_Ok = 0,
  /**
   * Malformed input (family, rank, weight, exponent, suite name).
   */
  PbwStatus_InvalidArgument = 1,
  /**
   * A verification suite ran and reported failures.
   */
  PbwStatus_VerificationFailed = 2,
  /**
   * The requested module exceeds the dimension cap.
   */
  PbwStatus_CapExceeded = 3,
  /**
   * A required pointer argument was null.
   */
  PbwStatus_NullPointer = 4,
} PbwStatus;

/**
 * Opaque root-system handle.
 */
typedef struct PbwSystem PbwSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread.  Valid until the
 * next failing call on the same thread; do not free.
 */
const char *pbw_last_error(void);

/**
 * Releases a string returned by any `*_json` call.
 */
void pbw_string_free(char *s);

/**
 * Creates a root system of the given family (`'A'` or `'C'`) and rank.
 *
 * # Safety
 * `out` must be a valid pointer; the handle must be released with
 * [`pbw_system_free`].
 */
PbwStatus pbw_system_new(char family, uint32_t rank, PbwSystem **out);

/**
 * Releases a handle created by [`pbw_system_new`].
 *
 * # Safety
 * `sys` must come from [`pbw_system_new`] and not be used afterwards.
 */
void pbw_system_free(PbwSystem *sys);

/**
 * Positive roots in canonical order, as a JSON array.
 *
 * # Safety
 * `sys` must be a live handle and `out_json` a valid pointer.
 */
PbwStatus pbw_roots_json(const PbwSystem *sys, char **out_json);

/**
 * All Dyck paths, as a JSON array of root arrays.
 *
 * # Safety
 * `sys` must be a live handle and `out_json` a valid pointer.
 */
PbwStatus pbw_paths_json(const PbwSystem *sys, char **out_json);

/**
 * Lattice points of the polytope of a dominant weight.
 *
 * # Safety
 * `sys` must be a live handle, `weight` must point to `weight_len`
 * entries, and `out_json` must be valid.
 */
PbwStatus pbw_points_json(const PbwSystem *sys,
                          const uint32_t *weight,
                          size_t weight_len,
                          char **out_json);

/**
 * Graded character of a dominant weight.
 *
 * # Safety
 * Same contract as [`pbw_points_json`].
 */
PbwStatus pbw_character_json(const PbwSystem *sys,
                             const uint32_t *weight,
                             size_t weight_len,
                             char **out_json);

/**
 * Rewrites a divided-power monomial over the basis.  `exponent` uses the
 * assignment syntax of the CLI, e.g. `"a[1,2]=2,a[2,2]=1"`.
 *
 * # Safety
 * `exponent` must be a NUL-terminated UTF-8 string; the rest as in
 * [`pbw_points_json`].
 */
PbwStatus pbw_straighten_json(const PbwSystem *sys,
                              const uint32_t *weight,
                              size_t weight_len,
                              const char *exponent,
                              char **out_json);

/**
 * Runs a verification suite (`dims`, `table1`, `basis`, `straighten`,
 * `minkowski`).  `family` may be null (both families); `max_rank` and
 * `max_coeff` use the suite defaults when negative, as does `seed`.
 * Returns `VerificationFailed` when the suite ran but a case failed; the
 * JSON report is produced either way.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `family` null or the same;
 * `out_json` valid.
 */
PbwStatus pbw_verify_json(const char *suite,
                          const char *family,
                          int32_t max_rank,
                          int32_t max_coeff,
                          int64_t seed,
                          char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PBWBASIS_H */
