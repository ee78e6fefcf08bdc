#ifndef STARID_H
#define STARID_H

/* Generated by cbindgen from the starid-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Outcome of a call; anything but `Ok` leaves a message readable through
 `starid_last_error`.
 */
typedef enum StaridStatus {
  STARID_STATUS_OK = 0,
  STARID_STATUS_NULL_ARGUMENT = 1,
  STARID_STATUS_INVALID_UTF8 = 2,
  STARID_STATUS_PARSE_FAILURE = 3,
  STARID_STATUS_DIM_MISMATCH = 4,
  STARID_STATUS_NUMERIC_FAILURE = 5,
  STARID_STATUS_INVALID_INPUT = 6,
  STARID_STATUS_PANIC = 7,
} StaridStatus;

/*
 Opaque set of continuous-time trajectories.
 */
typedef struct StaridTrajectorySet StaridTrajectorySet;

/*
 Distance parameters; `starid_config_default` fills the single-target
 preset (p = 2, all cutoffs 10).
 */
typedef struct StaridMetricConfig {
  double p;
  double c_sfa;
  double c_smd;
  double c_tfa;
  double c_tmd;
  /*
   Reject unequal false-alarm/missed-detection cutoffs.
   */
  bool distance_mode;
} StaridMetricConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the message of the most recent failure on this thread into `buf`
 (NUL-terminated, truncated to `cap`) and returns the full length the
 message needs including the terminator; 0 means no failure yet.

 # Safety
 `buf` must point to `cap` writable bytes, or be null with `cap` 0 to
 query the needed length.
 */
size_t starid_last_error(char *buf, size_t cap);

/*
 Parses a trajectory set from its JSON form and hands back an owned
 handle in `out`; free it with `starid_set_free`.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum StaridStatus starid_set_from_json(const char *json, struct StaridTrajectorySet **out);

/*
 Releases a handle from `starid_set_from_json`; null is a no-op.

 # Safety
 `set` must be null or a handle not freed before.
 */
void starid_set_free(struct StaridTrajectorySet *set);

/*
 Writes the state dimension of the set into `out`.

 # Safety
 `set` and `out` must be valid pointers.
 */
enum StaridStatus starid_set_dim(const struct StaridTrajectorySet *set, size_t *out);

/*
 Writes the number of trajectories in the set into `out`.

 # Safety
 `set` and `out` must be valid pointers.
 */
enum StaridStatus starid_set_len(const struct StaridTrajectorySet *set, size_t *out);

/*
 Fills `out` with the single-target preset.

 # Safety
 `out` must be a valid pointer.
 */
enum StaridStatus starid_config_default(struct StaridMetricConfig *out);

/*
 Set distance between truth and estimate, written to `out` in
 meter-seconds.

 # Safety
 All pointers must be valid; the sets must outlive the call.
 */
enum StaridStatus starid_star_id(const struct StaridTrajectorySet *truth,
                                 const struct StaridTrajectorySet *estimate,
                                 const struct StaridMetricConfig *cfg,
                                 double *out);

/*
 Time-averaged set distance over `[window_start, window_end]`, written to
 `out` in meters.

 # Safety
 All pointers must be valid; the sets must outlive the call.
 */
enum StaridStatus starid_ta_star_id(const struct StaridTrajectorySet *truth,
                                    const struct StaridTrajectorySet *estimate,
                                    const struct StaridMetricConfig *cfg,
                                    double window_start,
                                    double window_end,
                                    double *out);

/*
 Point-set distance between `x` (`m` rows) and `y` (`n` rows), both
 row-major with `dim` columns, written to `out`.

 # Safety
 `x` must hold `m * dim` doubles and `y` `n * dim`; `out` must be valid.
 Null row buffers are accepted only for zero row counts.
 */
enum StaridStatus starid_ospa(const double *x,
                              size_t m,
                              const double *y,
                              size_t n,
                              size_t dim,
                              double p,
                              double cutoff,
                              double *out);

/*
 Unnormalized point-set distance with cardinality term `alpha`, same
 buffer layout as `starid_ospa`.

 # Safety
 As for `starid_ospa`.
 */
enum StaridStatus starid_gospa(const double *x,
                               size_t m,
                               const double *y,
                               size_t n,
                               size_t dim,
                               double p,
                               double cutoff,
                               double alpha,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STARID_H */
