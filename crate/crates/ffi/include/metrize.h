#ifndef METRIZE_H
#define METRIZE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first five match the command-line exit codes.
 */
typedef enum MtzStatus {
  MTZ_STATUS_OK = 0,
  /**
   * The checked property does not hold.
   */
  MTZ_STATUS_FALSE = 1,
  /**
   * An argument or document failed validation.
   */
  MTZ_STATUS_INVALID = 2,
  /**
   * Malformed JSON or text that is not UTF-8.
   */
  MTZ_STATUS_FORMAT = 3,
  /**
   * A size bound was exceeded, including a caller buffer that is too small.
   */
  MTZ_STATUS_CAPACITY = 4,
  MTZ_STATUS_NULL_POINTER = 5,
  MTZ_STATUS_PANIC = 6,
} MtzStatus;

/**
 * A finite quantale given by its order and addition tables.
 */
typedef struct MtzQuantale MtzQuantale;

/**
 * A validated finite topology.
 */
typedef struct MtzTopology MtzTopology;

/**
 * Separation and basis conditions of a topology.
 */
typedef struct MtzBnsVerdict {
  bool t0;
  bool regular;
  bool sigma_discrete;
  bool metrizable;
} MtzBnsVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or `""`. Valid until the
 * next call into the library from the same thread.
 */
const char *mtz_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mtz_version(void);

/**
 * Releases a string returned by this library. Accepts null.
 */
void mtz_string_free(char *s);

/**
 * Validates `n_opens` point-set masks on `n_points` points as a topology.
 */
enum MtzStatus mtz_topology_new(uint32_t n_points,
                                const uint32_t *opens,
                                size_t n_opens,
                                struct MtzTopology **out);

/**
 * Parses a topology document `{"points": [...], "opens": [[...], ...]}`.
 */
enum MtzStatus mtz_topology_from_json(const char *json, struct MtzTopology **out);

/**
 * The discrete topology on `n_points <= 16` points.
 */
enum MtzStatus mtz_topology_discrete(uint32_t n_points, struct MtzTopology **out);

void mtz_topology_free(struct MtzTopology *t);

/**
 * Number of points, or 0 for a null handle.
 */
uint32_t mtz_topology_points(const struct MtzTopology *t);

/**
 * Number of opens, or 0 for a null handle.
 */
size_t mtz_topology_open_count(const struct MtzTopology *t);

/**
 * Copies the opens in canonical (ascending mask) order into `buf`.
 * `written` receives the number of opens; if `cap` is too small nothing is
 * copied and the result is [`MtzStatus::Capacity`].
 */
enum MtzStatus mtz_topology_opens(const struct MtzTopology *t,
                                  uint32_t *buf,
                                  size_t cap,
                                  size_t *written);

/**
 * Counts the labeled topologies on `n <= 4` points.
 */
enum MtzStatus mtz_enumerate_topologies_count(uint32_t n, size_t *count);

/**
 * Fills `verdict`; returns [`MtzStatus::False`] when the space is not metrizable.
 */
enum MtzStatus mtz_bns_verdict(const struct MtzTopology *t, struct MtzBnsVerdict *verdict);

/**
 * Builds the unit metric of a metrizable topology and reports whether its
 * open-ball topology equals the input. Refusals return [`MtzStatus::False`]
 * with the failed predicates in the error message.
 */
enum MtzStatus mtz_build_metric_round_trip(const struct MtzTopology *t, bool *equal);

/**
 * The family `{U : x ∈ U ⟹ y ∈ U}` whose down-set is the distance `d(x, y)`
 * of the Ω(τ)-continuity space.
 */
enum MtzStatus mtz_flagg_family(const struct MtzTopology *t,
                                uint32_t x,
                                uint32_t y,
                                uint64_t *family);

/**
 * Recomputes the open sets of the Ω(τ)-continuity space and compares them
 * with `t`. Returns [`MtzStatus::False`] when they differ.
 */
enum MtzStatus mtz_flagg_round_trip(const struct MtzTopology *t, bool *equal);

/**
 * The open ball around `x` with principal radius `↓radius_family`.
 */
enum MtzStatus mtz_flagg_ball(const struct MtzTopology *t,
                              uint32_t x,
                              uint64_t radius_family,
                              uint32_t *members);

/**
 * Parses a quantale document (`elements`, `leq`, `add`).
 */
enum MtzStatus mtz_quantale_from_json(const char *json, struct MtzQuantale **out);

/**
 * Materializes Ω(τ) for a topology with at most five opens.
 */
enum MtzStatus mtz_quantale_omega(const struct MtzTopology *t, struct MtzQuantale **out);

void mtz_quantale_free(struct MtzQuantale *q);

/**
 * Number of elements, or 0 for a null handle.
 */
size_t mtz_quantale_size(const struct MtzQuantale *q);

/**
 * Runs the value-quantale check with the default policy and `seed`.
 * `report_json` (optional) receives the full report; free it with
 * [`mtz_string_free`]. Returns [`MtzStatus::False`] when the check fails.
 */
enum MtzStatus mtz_quantale_check(const struct MtzQuantale *q, uint64_t seed, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* METRIZE_H */
