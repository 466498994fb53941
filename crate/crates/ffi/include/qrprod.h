#ifndef QRPROD_H
#define QRPROD_H

/* Generated by cbindgen from qrprod-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define QRPROD_OK 0

/**
 * An argument was outside the stated domain of the operation.
 */
#define QRPROD_ERR_DOMAIN 1

#define QRPROD_ERR_NOT_INVERTIBLE 2

#define QRPROD_ERR_INCONSISTENT 3

#define QRPROD_ERR_UNREACHABLE 4

#define QRPROD_ERR_CASE_FALLTHROUGH 5

#define QRPROD_ERR_INTEGRITY 6

#define QRPROD_ERR_UNKNOWN_ITEM 7

#define QRPROD_ERR_IO 8

/**
 * A required pointer argument was null, or a string was not valid.
 */
#define QRPROD_ERR_NULL -1

/**
 * Opaque validated odd prime.
 */
typedef struct QrprodPrime QrprodPrime;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Validate `p` and allocate a handle into `out`. The handle must be
 * released with `qrprod_prime_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int qrprod_prime_new(uint64_t p, struct QrprodPrime **out);

/**
 * Release a handle from `qrprod_prime_new`. Null is a no-op.
 *
 * # Safety
 * `h` must be null or a pointer returned by `qrprod_prime_new` that
 * has not been freed yet.
 */
void qrprod_prime_free(struct QrprodPrime *h);

/**
 * Jacobi symbol `(x/n)` for odd `n >= 1`; writes -1, 0, or 1.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int qrprod_jacobi(int64_t x, uint64_t n, int *out);

/**
 * Legendre symbol `(x/p)`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
int qrprod_legendre(const struct QrprodPrime *h, int64_t x, int *out);

/**
 * Lucas pair `(u_k(A), v_k(A)) mod p`.
 *
 * # Safety
 * `h` must be a live handle; `u` and `v` must be valid pointers.
 */
int qrprod_lucas_pair(const struct QrprodPrime *h, int64_t a, uint64_t k, uint64_t *u, uint64_t *v);

/**
 * Brute-force `T_p(a,b,c)`; `skipped` counts index pairs where `p`
 * divided the factor. O(p^2).
 *
 * # Safety
 * `h` must be a live handle; `value` and `skipped` must be valid.
 */
int qrprod_product_t(const struct QrprodPrime *h,
                     int64_t a,
                     int64_t b,
                     int64_t c,
                     uint64_t *value,
                     uint64_t *skipped);

/**
 * Closed form of `T_p(1,-A,-1)`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
int qrprod_closed_t_general(const struct QrprodPrime *h, int64_t a, uint64_t *out);

/**
 * `h(-4p)` for `p = 1 (mod 4)`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
int qrprod_h_minus_4p(const struct QrprodPrime *h, uint64_t *out);

/**
 * `h(-3p)` for `p = 1 (mod 4)`, `p > 3`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
int qrprod_h_minus_3p(const struct QrprodPrime *h, uint64_t *out);

/**
 * `h(-p)` for `p = 3 (mod 4)`, `p > 3`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
int qrprod_h_minus_p(const struct QrprodPrime *h, uint64_t *out);

/**
 * Sign of `((p-1)/2)! mod p` for `p = 3 (mod 4)`, `p > 3`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
int qrprod_mordell_sign(const struct QrprodPrime *h, int *out);

/**
 * Normalized decomposition `p = x^2 + y^2` with `x = 1 (mod 4)` and
 * `y = ((p-1)/2)! x (mod p)`; requires `p = 1 (mod 4)`.
 *
 * # Safety
 * `h` must be a live handle; `x` and `y` must be valid pointers.
 */
int qrprod_two_squares(const struct QrprodPrime *h, int64_t *x, int64_t *y);

/**
 * Predicted sign for conjecture `id` ("7.1" .. "7.10") with variant
 * selector `delta` in {-1, +1}; writes -1 or 1.
 *
 * # Safety
 * `h` must be a live handle, `id` a valid C string, `out` a valid
 * pointer.
 */
int qrprod_conjecture_rhs(const struct QrprodPrime *h, const char *id, int delta, int *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QRPROD_H */
