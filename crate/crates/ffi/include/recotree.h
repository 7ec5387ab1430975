#ifndef RECOTREE_H
#define RECOTREE_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RtModel {
  RT_MODEL_INTERVAL = 0,
  RT_MODEL_BUDGET_DISCRETE = 1,
  RT_MODEL_BUDGET_CONTINUOUS = 2,
} RtModel;

typedef enum RtStatus {
  RT_STATUS_OK = 0,
  /**
   * Null pointer or buffer length mismatch.
   */
  RT_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed instance: bad endpoints, negative costs, k out of range.
   */
  RT_STATUS_INVALID_INSTANCE = 2,
  RT_STATUS_DISCONNECTED = 3,
  /**
   * No finite approximation ratio can be certified.
   */
  RT_STATUS_NO_CERTIFICATE = 4,
  RT_STATUS_TOO_LARGE = 5,
  RT_STATUS_INTERNAL = 6,
} RtStatus;

/**
 * A graph with first-stage, nominal and deviation costs.
 */
typedef struct RtInstance RtInstance;

/**
 * Trees and objective returned by a solver.
 */
typedef struct RtSolution RtSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rt_last_error(void);

/**
 * Builds an instance from parallel edge arrays. `deviation` may be null
 * for all-zero deviations.
 *
 * # Safety
 * Every non-null array must hold `edge_count` elements; `out` must be writable.
 */
enum RtStatus rt_instance_new(size_t node_count,
                              size_t edge_count,
                              const size_t *tails,
                              const size_t *heads,
                              const int64_t *first_cost,
                              const int64_t *nominal,
                              const int64_t *deviation,
                              struct RtInstance **out);

/**
 * Parses an instance file in the command-line JSON format. Its `k`,
 * `model` and `gamma` fields are ignored; solvers take them as arguments.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RtStatus rt_instance_from_json(const char *json, struct RtInstance **out);

/**
 * # Safety
 * `inst` must come from an `rt_instance_*` constructor, or be null.
 */
void rt_instance_free(struct RtInstance *inst);

/**
 * # Safety
 * `inst` must be a live instance handle or null.
 */
size_t rt_instance_edge_count(const struct RtInstance *inst);

/**
 * Minimizes `C(X) + c(Y)` over tree pairs with `|Y \ X| <= k`.
 *
 * # Safety
 * `inst` must be a live instance handle; `out` must be writable.
 */
enum RtStatus rt_solve_rec(const struct RtInstance *inst, size_t k, struct RtSolution **out);

/**
 * Minimizes `c(Y)` over trees sharing at least `n - 1 - k` edges with the
 * given base tree. A null `base` with `base_len == 0` means the minimum
 * spanning tree under the first-stage costs.
 *
 * # Safety
 * `base` must hold `base_len` edge ids when non-null; `out` must be writable.
 */
enum RtStatus rt_solve_inc(const struct RtInstance *inst,
                           const size_t *base,
                           size_t base_len,
                           size_t k,
                           struct RtSolution **out);

/**
 * Recoverable robust tree under `model` (an [`RtModel`] value) with budget `gamma`. The interval
 * model is solved exactly; the budgeted models return an approximation
 * with a certified ratio. Returns `NoCertificate` (and still writes the
 * solution) when no finite ratio applies.
 *
 * # Safety
 * `inst` must be a live instance handle; `out` must be writable.
 */
enum RtStatus rt_solve_robust(const struct RtInstance *inst,
                              uint32_t model,
                              int64_t gamma,
                              size_t k,
                              struct RtSolution **out);

/**
 * # Safety
 * `sol` must come from a solver call, or be null.
 */
void rt_solution_free(struct RtSolution *sol);

/**
 * Copies up to `cap` first-stage edge ids (ascending) into `buf` and
 * returns the tree size. Pass a null `buf` to query the size.
 *
 * # Safety
 * `sol` must be a live solution; `buf` must have room for `cap` ids.
 */
size_t rt_solution_first_stage(const struct RtSolution *sol, size_t *buf, size_t cap);

/**
 * Same as [`rt_solution_first_stage`] for the recovery tree.
 *
 * # Safety
 * `sol` must be a live solution; `buf` must have room for `cap` ids.
 */
size_t rt_solution_recovery(const struct RtSolution *sol, size_t *buf, size_t cap);

/**
 * Writes the objective to `value` when it is an integer that fits.
 *
 * # Safety
 * `sol` must be a live solution; `value` must be writable.
 */
enum RtStatus rt_solution_objective_i64(const struct RtSolution *sol, int64_t *value);

/**
 * False when the objective is only an upper bound on the robust value.
 *
 * # Safety
 * `sol` must be a live solution or null.
 */
bool rt_solution_objective_is_exact(const struct RtSolution *sol);

/**
 * Objective as `"p"` or `"p/q"`. Release with [`rt_string_free`].
 *
 * # Safety
 * `sol` must be a live solution or null.
 */
char *rt_solution_objective_string(const struct RtSolution *sol);

/**
 * Certified approximation ratio as `"p/q"`, or null when there is none.
 * Exact solvers report `"1"` (robust) or null (rec, inc). Release with
 * [`rt_string_free`].
 *
 * # Safety
 * `sol` must be a live solution or null.
 */
char *rt_solution_ratio_string(const struct RtSolution *sol);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void rt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECOTREE_H */
