/* C ABI for the symtoda library: verification suites, reflection flows, leaf classification. */

#ifndef SYMTODA_H
#define SYMTODA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum StStatus {
  ST_STATUS_OK = 0,
  /**
   * Input failed a structural precondition.
   */
  ST_STATUS_INVALID_INPUT = 1,
  /**
   * A numerical routine broke down.
   */
  ST_STATUS_NUMERICAL_ERROR = 2,
  /**
   * The point is non-generic for the requested operation.
   */
  ST_STATUS_DEGENERATE_POINT = 3,
  /**
   * A verified identity exceeded its tolerance.
   */
  ST_STATUS_VERIFICATION_FAILURE = 4,
  /**
   * A required pointer argument was NULL.
   */
  ST_STATUS_NULL_POINTER = 5,
  /**
   * A string argument was not valid UTF-8.
   */
  ST_STATUS_UTF8_ERROR = 6,
  /**
   * An index was out of range.
   */
  ST_STATUS_INDEX_OUT_OF_RANGE = 7,
  /**
   * The provided buffer is too small; required size is reported.
   */
  ST_STATUS_BUFFER_TOO_SMALL = 8,
  /**
   * An internal panic was caught at the boundary.
   */
  ST_STATUS_PANIC = 9,
} StStatus;

/**
 * Opaque verification report handle.
 */
typedef struct StReport StReport;

/**
 * Opaque trajectory handle.
 */
typedef struct StTrajectory StTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message on this thread into `buf` (NUL-terminated,
 * truncated to `cap`); `written` receives the full length including NUL.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes; `written` may be NULL.
 */
enum StStatus st_last_error_message(char *buf, size_t cap, size_t *written);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void st_string_free(char *s);

/**
 * Run the verification suites at size n with the given seed; `suite` may
 * be NULL to run all suites, or name one (e.g. "r-identities").
 * On success `*out` owns a report; release with [`st_report_free`].
 *
 * # Safety
 * `out` must be a valid pointer; `suite` must be NULL or a NUL-terminated
 * UTF-8 string.
 */
enum StStatus st_verify_run(uint32_t n, uint64_t seed, const char *suite, struct StReport **out);

/**
 * Whether every check of the report passed.
 *
 * # Safety
 * `report` must be a live handle from [`st_verify_run`].
 */
bool st_report_pass(const struct StReport *report);

/**
 * Number of checks in the report.
 *
 * # Safety
 * `report` must be a live handle.
 */
size_t st_report_check_count(const struct StReport *report);

/**
 * Copy the name of check `index` into `buf` (NUL-terminated, truncated
 * to `cap`); `written` receives the full length including NUL.
 *
 * # Safety
 * `report` must be a live handle; `buf` must point to `cap` writable
 * bytes; `written` may be NULL.
 */
enum StStatus st_report_check_name(const struct StReport *report,
                                   size_t index,
                                   char *buf,
                                   size_t cap,
                                   size_t *written);

/**
 * Residual, tolerance and verdict of check `index`.
 *
 * # Safety
 * `report` must be a live handle; out-pointers may be NULL to skip.
 */
enum StStatus st_report_check_values(const struct StReport *report,
                                     size_t index,
                                     double *residual,
                                     double *tol,
                                     bool *pass);

/**
 * Serialize the report to JSON; the returned string must be released
 * with [`st_string_free`].
 *
 * # Safety
 * `report` must be a live handle; `out` must be valid.
 */
enum StStatus st_report_to_json(const struct StReport *report, char **out);

/**
 * Release a report handle.
 *
 * # Safety
 * `report` must come from [`st_verify_run`] and not be freed twice.
 */
void st_report_free(struct StReport *report);

/**
 * Simulate the reflection flow of H_k. `b0` may be NULL (a seeded
 * generic point is drawn) or point to a row-major n·n upper-triangular
 * matrix. `samples` grid rows cover [t0, t1]. Release the trajectory
 * with [`st_trajectory_free`].
 *
 * # Safety
 * `out` must be valid; `b0` must be NULL or point to n·n doubles.
 */
enum StStatus st_simulate_run(uint32_t n,
                              uint64_t seed,
                              uint32_t trace_power,
                              const double *b0,
                              double t0,
                              double t1,
                              size_t samples,
                              struct StTrajectory **out);

/**
 * Number of sampled rows.
 *
 * # Safety
 * `traj` must be a live handle.
 */
size_t st_trajectory_sample_count(const struct StTrajectory *traj);

/**
 * Matrix size n of the trajectory points.
 *
 * # Safety
 * `traj` must be a live handle.
 */
uint32_t st_trajectory_dim(const struct StTrajectory *traj);

/**
 * Time, Hamiltonian value, the n·n row-major point, the n actions and
 * the n angle coordinates of row `index`. Out-pointers may be NULL to
 * skip; `point` needs n·n doubles, `actions` and `angles` need n each.
 *
 * # Safety
 * `traj` must be a live handle and the non-NULL buffers adequately sized.
 */
enum StStatus st_trajectory_sample(const struct StTrajectory *traj,
                                   size_t index,
                                   double *time,
                                   double *hamiltonian,
                                   double *point,
                                   double *actions,
                                   double *angles);

/**
 * Release a trajectory handle.
 *
 * # Safety
 * `traj` must come from [`st_simulate_run`] and not be freed twice.
 */
void st_trajectory_free(struct StTrajectory *traj);

/**
 * Classify the double Bruhat cell of an upper-triangular point:
 * 1-based one-line images (buffer of n u32), the Coxeter length, the
 * torus-fixed dimension, the predicted leaf dimension and the measured
 * bivector rank. Out-pointers may be NULL to skip.
 *
 * # Safety
 * `b` must point to n·n doubles; `images` to n u32 when non-NULL.
 */
enum StStatus st_leaf_classify(uint32_t n,
                               const double *b,
                               uint32_t *images,
                               uint32_t *length,
                               uint32_t *torus_fixed,
                               uint32_t *predicted,
                               uint32_t *measured);

/**
 * Translate b along its orbit by the positive diagonal D (n entries,
 * det 1): writes the translated point and optionally the witness β, both
 * row-major n·n.
 *
 * # Safety
 * `b` and `d` must point to n·n and n doubles; `translated` to n·n
 * writable doubles; `witness` may be NULL.
 */
enum StStatus st_orbit_translate(uint32_t n,
                                 const double *b,
                                 const double *d,
                                 double *translated,
                                 double *witness);

/**
 * The calibrated time constant between the factorization flow and the
 * bracket vector field, with its collinearity residual.
 *
 * # Safety
 * Out-pointers may be NULL to skip.
 */
enum StStatus st_time_scale(double *lambda, double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMTODA_H */
