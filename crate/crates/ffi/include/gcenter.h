#ifndef GCENTER_H
#define GCENTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_ARGUMENT = 1,
  GC_STATUS_INVALID_UTF8 = 2,
  GC_STATUS_PARSE = 3,
  GC_STATUS_COMPUTE = 4,
  GC_STATUS_PANIC = 5,
} GcStatus;

// Verdict tags reported by [`gc_verify`].
typedef enum GcGlobalTag {
  GC_GLOBAL_TAG_GLOBAL_CENTER_CONSISTENT = 0,
  GC_GLOBAL_TAG_NOT_GLOBAL = 1,
  GC_GLOBAL_TAG_INCONCLUSIVE = 2,
} GcGlobalTag;

// Opaque parameter vector.
typedef struct GcParams GcParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread (empty after success).
// The pointer stays valid until the next call on the same thread.
const char *gc_last_error_message(void);

// Parses `{"a1": "p/q", ..., "d2": "p/q"}` into a new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum GcStatus gc_params_from_json(const char *json, struct GcParams **out);

// Builds a handle from eight rational strings in the order
// `a1, a2, b1, b2, c1, c2, d1, d2`.
//
// # Safety
// `values` must point to eight NUL-terminated strings and `out` must be valid.
enum GcStatus gc_params_from_strings(const char *const *values, struct GcParams **out);

// # Safety
// `params` must come from this library and not be used afterwards. Null is ignored.
void gc_params_free(struct GcParams *params);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void gc_string_free(char *s);

// Center conditions and global-center statements as bit masks: bit `k`
// of `center_mask` is case k+1 of (i)–(iv); bit `k` of `global_mask` is
// statement (a)+k.
//
// # Safety
// All pointers must be valid.
enum GcStatus gc_decide(const struct GcParams *params,
                        uint32_t *center_mask,
                        uint32_t *global_mask);

// The system in chart `chart` (`"u1"`, `"u2"`, `"v1"`, `"v2"` or `"u3"`)
// as canonical two-line text.
//
// # Safety
// All pointers must be valid; `chart` NUL-terminated.
enum GcStatus gc_chart_field(const struct GcParams *params, const char *chart, char **out);

// Applies a comma-separated step list to a chart field and returns the
// chain as JSON.
//
// # Safety
// All pointers must be valid; strings NUL-terminated.
enum GcStatus gc_blowup_json(const struct GcParams *params,
                             const char *chart,
                             const char *steps,
                             char **out);

// Numerical global-center test with the default radii. Non-positive
// `closure_tol` or `max_time` select the defaults. `out_json` may be null.
//
// # Safety
// `params` and `tag` must be valid; `out_json` valid or null.
enum GcStatus gc_verify(const struct GcParams *params,
                        double closure_tol,
                        double max_time,
                        enum GcGlobalTag *tag,
                        char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GCENTER_H */
