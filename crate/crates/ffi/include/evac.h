#ifndef EVAC_H
#define EVAC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EvacFamily {
  EVAC_FAMILY_BSP = 0,
  EVAC_FAMILY_HALF_CHORD = 1,
  EVAC_FAMILY_FAST_CHORD = 2,
} EvacFamily;

/**
 * Which robot.
 */
typedef enum EvacRobot {
  EVAC_ROBOT_FAST = 0,
  EVAC_ROBOT_SLOW = 1,
} EvacRobot;

/**
 * Result code of every call.
 */
typedef enum EvacStatus {
  EVAC_STATUS_OK = 0,
  EVAC_STATUS_NULL_POINTER = 1,
  EVAC_STATUS_DOMAIN = 2,
  EVAC_STATUS_INFEASIBLE = 3,
  EVAC_STATUS_NUMERICAL = 4,
  EVAC_STATUS_PANIC = 5,
} EvacStatus;

/**
 * Opaque strategy handle.
 */
typedef struct EvacStrategy EvacStrategy;

typedef struct EvacExitOutcome {
  double discovery_time;
  double evac_time;
  enum EvacRobot finder;
} EvacExitOutcome;

typedef struct EvacWorstCase {
  double exit_angle;
  double discovery_time;
  double evac_time;
  enum EvacRobot finder;
} EvacWorstCase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *evac_status_string(enum EvacStatus status);

/**
 * Message of the last failure on this thread, or NULL.
 * Valid until the next failing call on the same thread.
 */
const char *evac_last_error(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_strategy_new_bsp(double s, struct EvacStrategy **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_strategy_new_half_chord(double s, struct EvacStrategy **out);

/**
 * Fast-Chord with a given `x3`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_strategy_new_fast_chord(double s, double x3, struct EvacStrategy **out);

/**
 * Fast-Chord with `x3` chosen by search at the default resolution.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_strategy_new_fast_chord_optimal(double s, struct EvacStrategy **out);

/**
 * # Safety
 * `strategy` must be NULL or a handle not yet freed.
 */
void evac_strategy_free(struct EvacStrategy *strategy);

/**
 * # Safety
 * Pointers must be valid.
 */
enum EvacStatus evac_strategy_family(const struct EvacStrategy *strategy, enum EvacFamily *out);

/**
 * Time at which both robots have finished their schedules.
 *
 * # Safety
 * Pointers must be valid.
 */
enum EvacStatus evac_strategy_duration(const struct EvacStrategy *strategy, double *out);

/**
 * Position of a robot at time `t`; times past the schedule hold the last point.
 *
 * # Safety
 * Pointers must be valid.
 */
enum EvacStatus evac_strategy_position(const struct EvacStrategy *strategy,
                                       enum EvacRobot robot,
                                       double t,
                                       double *x,
                                       double *y);

/**
 * Evacuation time when the exit is at `exit_angle`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum EvacStatus evac_time_for_exit_angle(const struct EvacStrategy *strategy,
                                         double exit_angle,
                                         struct EvacExitOutcome *out);

/**
 * Worst exit placement found on a grid of `grid_step` refined to `refine_tol`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum EvacStatus evac_worst_case(const struct EvacStrategy *strategy,
                                double grid_step,
                                double refine_tol,
                                struct EvacWorstCase *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_ub_bsp(double s, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_ub_half_chord(double s, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_lb_fes(double s, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_lb_bes_original(double s, double *out);

/**
 * Improved lower bound at the default search resolution.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_lb_bes_improved(double s, double *out);

/**
 * Best lower bound at the default resolution.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EvacStatus evac_lb_overall(double s, double *out);

/**
 * Best upper bound at the default resolution, with the family achieving it.
 * `family` may be NULL.
 *
 * # Safety
 * `out` must be valid for writes; `family` must be NULL or valid.
 */
enum EvacStatus evac_ub_overall(double s, double *out, enum EvacFamily *family);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EVAC_H */
