#ifndef CURVEDIST_H
#define CURVEDIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CurvedistStatus {
  CURVEDIST_STATUS_OK = 0,
  CURVEDIST_STATUS_NULL_ARGUMENT = 1,
  CURVEDIST_STATUS_INVALID_UTF8 = 2,
  CURVEDIST_STATUS_INVALID_INPUT = 3,
  /**
   * A size cap or search budget was exceeded.
   */
  CURVEDIST_STATUS_BUDGET = 4,
  /**
   * An internal error; the library state is still usable.
   */
  CURVEDIST_STATUS_PANIC = 5,
} CurvedistStatus;

/**
 * Two point sets on their host curves, with the seed they were sampled with.
 */
typedef struct CurvedistConfig CurvedistConfig;

/**
 * A plane algebraic curve with rational coefficients.
 */
typedef struct CurvedistCurve CurvedistCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call into the library on this
 * thread.
 */
const char *curvedist_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void curvedist_string_free(char *s);

/**
 * Parses a curve such as `"y - x^2"` or a JSON curve object.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer. On
 * success `*out` owns a handle to release with [`curvedist_curve_free`].
 */
enum CurvedistStatus curvedist_curve_parse(const char *text, struct CurvedistCurve **out);

/**
 * # Safety
 * `curve` must be NULL or a handle from [`curvedist_curve_parse`] that has
 * not been freed.
 */
void curvedist_curve_free(struct CurvedistCurve *curve);

/**
 * Total degree of the curve, or 0 for a NULL handle.
 *
 * # Safety
 * `curve` must be NULL or a live handle.
 */
uint32_t curvedist_curve_degree(const struct CurvedistCurve *curve);

/**
 * The defining polynomial as text; free with [`curvedist_string_free`].
 * Returns NULL for a NULL handle.
 *
 * # Safety
 * `curve` must be NULL or a live handle.
 */
char *curvedist_curve_to_string(const struct CurvedistCurve *curve);

/**
 * Exact membership test for a rational point given as `"p"` or `"p/q"`.
 *
 * # Safety
 * `curve` must be a live handle, `x` and `y` NUL-terminated strings and
 * `out` writable.
 */
enum CurvedistStatus curvedist_curve_contains(const struct CurvedistCurve *curve,
                                              const char *x,
                                              const char *y,
                                              bool *out);

/**
 * Number of distinct distances within a point set on `curve`. `points` is a
 * JSON array of points or a generator object; `seed` drives random sampling.
 *
 * # Safety
 * `curve` must be a live handle, `points` a NUL-terminated string and `out`
 * writable.
 */
enum CurvedistStatus curvedist_distinct_distances(const struct CurvedistCurve *curve,
                                                  const char *points,
                                                  uint64_t seed,
                                                  uintptr_t *out);

/**
 * Size of the curve's symmetry group. For lines and circles `*infinite` is
 * set and `*count` is 0.
 *
 * # Safety
 * `curve` must be a live handle; `count` and `infinite` must be writable.
 */
enum CurvedistStatus curvedist_symmetry_count(const struct CurvedistCurve *curve,
                                              uintptr_t *count,
                                              bool *infinite);

/**
 * Reads a configuration from JSON with keys `c1`, `s1`, `c2`, `s2` (and an
 * optional `seed`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable. On success
 * `*out` owns a handle to release with [`curvedist_config_free`].
 */
enum CurvedistStatus curvedist_config_from_json(const char *json, struct CurvedistConfig **out);

/**
 * # Safety
 * `config` must be NULL or a handle from [`curvedist_config_from_json`]
 * that has not been freed.
 */
void curvedist_config_free(struct CurvedistConfig *config);

/**
 * `|S₁|` and `|S₂|`.
 *
 * # Safety
 * `config` must be a live handle; `m` and `n` must be writable.
 */
enum CurvedistStatus curvedist_config_sizes(const struct CurvedistConfig *config,
                                            uintptr_t *m,
                                            uintptr_t *n);

/**
 * Normalizes the configuration and reports quadruples, incidences and the
 * partition as a JSON document, written to `*out` (free with
 * [`curvedist_string_free`]). A zero cap selects the default.
 *
 * # Safety
 * `config` must be a live handle and `out` writable.
 */
enum CurvedistStatus curvedist_config_analyze(const struct CurvedistConfig *config,
                                              uintptr_t max_distances,
                                              uintptr_t max_incidences,
                                              char **out);

/**
 * Runs the seeded property suites within `budget`. The JSON report goes to
 * `*report` (free with [`curvedist_string_free`]) and `*exit_code` is 0 when
 * all suites pass, 1 on a failure and 3 when suites were skipped.
 *
 * # Safety
 * `report` and `exit_code` must be writable.
 */
enum CurvedistStatus curvedist_verify(uint64_t budget, char **report, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVEDIST_H */
