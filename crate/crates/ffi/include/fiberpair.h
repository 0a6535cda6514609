#ifndef FIBERPAIR_H
#define FIBERPAIR_H

/* Generated by cbindgen from the fiberpair-ffi crate. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum FpStatus {
  FP_STATUS_OK = 0,
  FP_STATUS_NULL_POINTER = 1,
  FP_STATUS_INVALID_UTF8 = 2,
  FP_STATUS_PARSE = 3,
  FP_STATUS_IO = 4,
  FP_STATUS_INVALID_FIBER = 5,
  FP_STATUS_INVALID_ARGUMENT = 6,
  FP_STATUS_NOT_TORSION = 7,
  FP_STATUS_DOMAIN = 8,
  FP_STATUS_OVERFLOW = 9,
  FP_STATUS_INTERNAL = 10,
} FpStatus;

/*
 Opaque fiber handle.
 */
typedef struct FpFiber FpFiber;

/*
 Opaque component group handle.
 */
typedef struct FpGroup FpGroup;

/*
 Message for the last failed call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *fp_last_error_message(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void fp_string_free(char *s);

/*
 # Safety
 `json` must be a NUL-terminated string; `out` a valid pointer.
 */
enum FpStatus fp_fiber_from_json(const char *json, struct FpFiber **out);

/*
 # Safety
 `path` must be a NUL-terminated string; `out` a valid pointer.
 */
enum FpStatus fp_fiber_load(const char *path, struct FpFiber **out);

/*
 Built-in configuration such as `"I3"`, `"I*0"` or `"IV*"`.

 # Safety
 `tag` must be a NUL-terminated string; `out` a valid pointer.
 */
enum FpStatus fp_fiber_kodaira(const char *tag, struct FpFiber **out);

/*
 # Safety
 `f` must be NULL or a handle from this library, not yet freed.
 */
void fp_fiber_free(struct FpFiber *f);

/*
 # Safety
 `f` must be a live handle; `path` a NUL-terminated string.
 */
enum FpStatus fp_fiber_save(const struct FpFiber *f, const char *path);

/*
 Canonical JSON text; release with [`fp_string_free`].

 # Safety
 `f` must be a live handle; `out` a valid pointer.
 */
enum FpStatus fp_fiber_to_json(const struct FpFiber *f, char **out);

/*
 Sets `*valid` to 1 when every invariant holds, 0 otherwise; the failing
 checks are described by [`fp_last_error_message`].

 # Safety
 `f` must be a live handle; `valid` a valid pointer.
 */
enum FpStatus fp_fiber_validate(const struct FpFiber *f, int permissive, int *valid);

/*
 # Safety
 `f` must be a live handle; `out` a valid pointer.
 */
enum FpStatus fp_fiber_component_count(const struct FpFiber *f, size_t *out);

/*
 gcd of the multiplicities.

 # Safety
 `f` must be a live handle; `out` a valid pointer.
 */
enum FpStatus fp_fiber_index(const struct FpFiber *f, int64_t *out);

/*
 # Safety
 `f` must be a live handle; `out` a valid pointer.
 */
enum FpStatus fp_group_new(const struct FpFiber *f, struct FpGroup **out);

/*
 # Safety
 `g` must be NULL or a handle from this library, not yet freed.
 */
void fp_group_free(struct FpGroup *g);

/*
 Number of nontrivial invariant factors.

 # Safety
 `g` must be a live handle; `out` a valid pointer.
 */
enum FpStatus fp_group_rank(const struct FpGroup *g, size_t *out);

/*
 # Safety
 `g` must be a live handle; `out` a valid pointer.
 */
enum FpStatus fp_group_invariant_factor(const struct FpGroup *g, size_t i, int64_t *out);

/*
 # Safety
 `g` must be a live handle; `out` a valid pointer.
 */
enum FpStatus fp_group_order(const struct FpGroup *g, int64_t *out);

/*
 The pairing of two torsion vectors of length `len`, as `num/den` with
 `0 <= num < den`.

 # Safety
 `g` must be a live handle; `t`, `t_prime` arrays of `len` elements;
 `num`, `den` valid pointers.
 */
enum FpStatus fp_pairing(const struct FpGroup *g,
                         const int64_t *t,
                         const int64_t *t_prime,
                         size_t len,
                         int64_t *num,
                         int64_t *den);

/*
 Total of the horizontal plus vertical decomposition.

 # Safety
 `f` must be a live handle; `rho_c`, `rho_d` arrays of `len` elements;
 `num`, `den` valid pointers.
 */
enum FpStatus fp_gross_hriljac(const struct FpFiber *f,
                               int64_t horizontal,
                               const int64_t *rho_c,
                               const int64_t *rho_d,
                               size_t len,
                               int64_t *num,
                               int64_t *den);

/*
 Sets `*extendable`; when 0, `obs_num/obs_den` is the first non-integral
 probe value mod Z, otherwise `0/1`.

 # Safety
 `g` must be a live handle; `rho_d` an array of `len` elements; the
 out pointers valid.
 */
enum FpStatus fp_extendable(const struct FpGroup *g,
                            const int64_t *rho_d,
                            size_t len,
                            int *extendable,
                            int64_t *obs_num,
                            int64_t *obs_den);

/*
 Local multiplicity of `num/den` at the point `g = 0` over `p`, by
 resultants. `den` may be NULL for a polynomial.

 # Safety
 `g`, `num` NUL-terminated strings; `den` NULL or one; `out` valid.
 */
enum FpStatus fp_oracle_local(const char *g,
                              const char *num,
                              const char *den,
                              uint64_t p,
                              int64_t *out);

/*
 The same number from the length of `Z[x]/(g, h)`.

 # Safety
 `g`, `h` NUL-terminated strings; `out` valid.
 */
enum FpStatus fp_oracle_length(const char *g, const char *h, uint64_t p, int64_t *out);

/*
 Norm of `c` from `Q[x]/(h)` for split `h` such as `"(x-1)^2(x-2)"`,
 against the product of values at the roots.

 # Safety
 `h`, `c` NUL-terminated strings; the out pointers valid.
 */
enum FpStatus fp_oracle_norm(const char *h,
                             const char *c,
                             int64_t *lhs_num,
                             int64_t *lhs_den,
                             int64_t *rhs_num,
                             int64_t *rhs_den,
                             int *equal);

#endif  /* FIBERPAIR_H */
