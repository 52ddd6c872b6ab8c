#ifndef COMBGENUS_H
#define COMBGENUS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every exported function.
typedef enum CgStatus {
  CG_STATUS_OK = 0,
  // A required pointer argument was NULL.
  CG_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  CG_STATUS_INVALID_UTF8 = 2,
  // Malformed curve, field, element or divisor, or mismatched operands.
  CG_STATUS_PARSE = 3,
  // A place of degree above 2, or a factor that could not be certified.
  CG_STATUS_UNSUPPORTED = 4,
  // An arithmetic precondition failed, such as division by zero.
  CG_STATUS_MATH = 5,
  // An internal consistency check failed.
  CG_STATUS_THEOREM_VIOLATION = 6,
  // The library panicked; the handles passed in should be discarded.
  CG_STATUS_PANIC = 7,
} CgStatus;

// A curve `y^2 = D(x)` or the projective line over Q or F_p.
typedef struct CgCurve CgCurve;

// A finite-dimensional subspace of the function field of a curve.
typedef struct CgSubspace CgSubspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a curve. `model` is `"rational"` or `"y^2 = D(x)"`; `field` is
// `"Q"` or `"Fp:<p>"`, and NULL selects F_10007.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum CgStatus cg_curve_new(const char *model, const char *field, struct CgCurve **out);

// Releases a curve. Subspaces built on it stay valid.
//
// # Safety
// `curve` must come from `cg_curve_new` and not have been freed; NULL is
// ignored.
void cg_curve_free(struct CgCurve *curve);

// Writes the genus of the curve to `out`.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum CgStatus cg_curve_genus(const struct CgCurve *curve, uintptr_t *out);

// The span of `n` elements given as expressions in `x` and `y`.
//
// # Safety
// `elems` must point to `n` NUL-terminated strings; `out` must be writable.
enum CgStatus cg_subspace_new(const struct CgCurve *curve,
                              const char *const *elems,
                              uintptr_t n,
                              struct CgSubspace **out);

// Releases a subspace.
//
// # Safety
// `s` must come from this library and not have been freed; NULL is ignored.
void cg_subspace_free(struct CgSubspace *s);

// Writes `dim S` to `out`.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum CgStatus cg_subspace_dim(const struct CgSubspace *s, uintptr_t *out);

// Writes the combinatorial genus `dim S^2 - 2 dim S + 1` to `out`.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum CgStatus cg_subspace_gamma(const struct CgSubspace *s, int64_t *out);

// The product subspace `ST`, spanned by all `st`.
//
// # Safety
// `s` and `t` must be live handles and `out` writable.
enum CgStatus cg_subspace_product(const struct CgSubspace *s,
                                  const struct CgSubspace *t,
                                  struct CgSubspace **out);

// A JSON array of basis element strings.
//
// # Safety
// `s` must be a live handle and `out` writable. Free the result with
// `cg_string_free`.
enum CgStatus cg_subspace_basis_json(const struct CgSubspace *s, char **out);

// The divisor `div(S)` as a JSON array of `{place_id, coeff, degree}`.
//
// # Safety
// `s` must be a live handle and `out` writable. Free the result with
// `cg_string_free`.
enum CgStatus cg_subspace_divisor_json(const struct CgSubspace *s, char **out);

// The Riemann-Roch space `L(D)` for a divisor such as `"3*O + P(0,0)"`.
// Writes NULL to `out` when `L(D) = 0`.
//
// # Safety
// `curve` must be a live handle, `divisor` NUL-terminated and `out`
// writable.
enum CgStatus cg_rr_space(const struct CgCurve *curve,
                          const char *divisor,
                          struct CgSubspace **out);

// The full classification of `S` as a JSON object.
//
// # Safety
// `s` must be a live handle and `out` writable. Free the result with
// `cg_string_free`.
enum CgStatus cg_classify_json(const struct CgSubspace *s, char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed; NULL is ignored.
void cg_string_free(char *s);

// The message of the last call on this thread, empty after a success.
// The pointer stays valid until the next call into the library on the
// same thread.
const char *cg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMBGENUS_H */
