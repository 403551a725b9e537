#ifndef INVSEMI_H
#define INVSEMI_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first four agree with the command-line exit codes.
 */
typedef enum InvsemiStatus {
  INVSEMI_STATUS_OK = 0,
  INVSEMI_STATUS_PARSE = 1,
  INVSEMI_STATUS_PRECONDITION = 2,
  INVSEMI_STATUS_CERTIFICATION = 3,
  INVSEMI_STATUS_NULL_POINTER = 4,
  INVSEMI_STATUS_PANIC = 5,
} InvsemiStatus;

/**
 * A finite inverse semigroup of partial injections together with its Green's data.
 */
typedef struct InvsemiSemigroup InvsemiSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the library;
 * valid until the next call into it from the same thread.
 */
const char *invsemi_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void invsemi_string_free(char *s);

/**
 * Builds the closure of a semigroup file (`{"degree": n, "generators": [...]}`).
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum InvsemiStatus invsemi_semigroup_from_json(const char *json, struct InvsemiSemigroup **out);

/**
 * # Safety
 * `handle` must come from [`invsemi_semigroup_from_json`] or be NULL.
 */
void invsemi_semigroup_free(struct InvsemiSemigroup *handle);

/**
 * Number of elements, or 0 for a NULL handle.
 *
 * # Safety
 * `handle` must be a live handle or NULL.
 */
size_t invsemi_semigroup_size(const struct InvsemiSemigroup *handle);

/**
 * Green's-relations report as JSON (same schema as the `greens` command).
 *
 * # Safety
 * `handle` must be live; `out` must be a valid pointer.
 */
enum InvsemiStatus invsemi_semigroup_greens_json(const struct InvsemiSemigroup *handle, char **out);

/**
 * Egg-box diagram in Graphviz DOT.
 *
 * # Safety
 * `handle` must be live; `out` must be a valid pointer.
 */
enum InvsemiStatus invsemi_semigroup_eggbox_dot(const struct InvsemiSemigroup *handle, char **out);

/**
 * Per-class generating sets for U, V and their intersection; `u_json` and
 * `v_json` are JSON arrays of elements of the semigroup.
 *
 * # Safety
 * `handle` must be live; string arguments valid C strings; `out` a valid pointer.
 */
enum InvsemiStatus invsemi_semigroup_howson_json(const struct InvsemiSemigroup *handle,
                                                 const char *u_json,
                                                 const char *v_json,
                                                 char **out);

/**
 * Product x^{-a}x^b · x^{-c}x^d in the bicyclic monoid.
 *
 * # Safety
 * `out_a` and `out_b` must be valid pointers.
 */
enum InvsemiStatus invsemi_bicyclic_multiply(uint64_t a,
                                             uint64_t b,
                                             uint64_t c,
                                             uint64_t d,
                                             uint64_t *out_a,
                                             uint64_t *out_b);

/**
 * Certified generating set of ⟨U⟩ ∩ ⟨V⟩ in the bicyclic monoid, as JSON.
 * `u_json`/`v_json` are arrays of `[a, b]` pairs.
 *
 * # Safety
 * String arguments must be valid C strings; `out` a valid pointer.
 */
enum InvsemiStatus invsemi_bicyclic_intersect_json(const char *u_json,
                                                   const char *v_json,
                                                   uint64_t bound,
                                                   uint64_t cap,
                                                   char **out);

/**
 * Decides whether two words over `x`/`X` are equal in the presented
 * monogenic inverse semigroup.
 *
 * # Safety
 * String arguments must be valid C strings; `out` a valid pointer.
 */
enum InvsemiStatus invsemi_monogenic_equal(const char *presentation_json,
                                           const char *lhs,
                                           const char *rhs,
                                           bool *out);

/**
 * Runs the command-line front end in-process. `argv` excludes the program
 * name. The exit code is returned through `exit_code`; captured output
 * through `stdout_out` and `stderr_out` (both must be freed).
 *
 * # Safety
 * `argv` must point to `argc` valid C strings; out-pointers must be valid.
 */
enum InvsemiStatus invsemi_run(const char *const *argv,
                               size_t argc,
                               int32_t *exit_code,
                               char **stdout_out,
                               char **stderr_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INVSEMI_H */
