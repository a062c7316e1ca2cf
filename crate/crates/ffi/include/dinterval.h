#ifndef DINTERVAL_H
#define DINTERVAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DiStatus {
  DI_STATUS_OK = 0,
  DI_STATUS_NULL_POINTER = 1,
  DI_STATUS_INVALID_UTF8 = 2,
  DI_STATUS_INVALID_INSTANCE = 3,
  DI_STATUS_INVALID_ARGUMENT = 4,
  DI_STATUS_BUDGET_EXCEEDED = 5,
  DI_STATUS_SOLVER_ERROR = 6,
  DI_STATUS_PANIC = 7,
} DiStatus;

/*
 Opaque handle to a validated instance (family plus optional weights).
 */
typedef struct DiFamily DiFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread (empty after a
 success). Valid until the next call on the same thread.
 */
const char *di_last_error(void);

/*
 Parses and validates instance JSON.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DiStatus di_family_from_json(const char *json, struct DiFamily **out);

/*
 Walecki family for `d >= 2`.

 # Safety
 `out` must be writable.
 */
enum DiStatus di_gen_walecki(size_t d, struct DiFamily **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `f` must come from this library and not be used afterwards.
 */
void di_family_free(struct DiFamily *f);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void di_string_free(char *s);

/*
 Canonical instance JSON.

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum DiStatus di_family_to_json(const struct DiFamily *f, char **out);

/*
 Number of edges.

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum DiStatus di_family_edge_count(const struct DiFamily *f, size_t *out);

/*
 Weighted matching number. `max_nodes == 0` uses the default budget.

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum DiStatus di_nu_w(const struct DiFamily *f, uint64_t max_nodes, uint64_t *out);

/*
 Weighted cover number.

 # Safety
 As `di_nu_w`.
 */
enum DiStatus di_tau_w(const struct DiFamily *f, uint64_t max_nodes, uint64_t *out);

/*
 Edge chromatic number.

 # Safety
 As `di_nu_w`.
 */
enum DiStatus di_chi_e(const struct DiFamily *f, uint64_t max_nodes, uint64_t *out);

/*
 Fractional weighted cover number as a `"p/q"` string.

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum DiStatus di_tau_star_w(const struct DiFamily *f, char **out);

/*
 Bound report as JSON. `theorems_hold` (optional) receives whether every
 theorem row holds.

 # Safety
 `f` must be a live handle; `out` must be writable; `theorems_hold` may
 be null.
 */
enum DiStatus di_verify_json(const struct DiFamily *f,
                             uint64_t max_nodes,
                             char **out,
                             bool *theorems_hold);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DINTERVAL_H */
