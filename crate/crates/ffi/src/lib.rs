//! C ABI for the residue-product library. Primes are validated once
//! into an opaque handle; every function returns an error code and
//! writes results through out-pointers.
//!
//! All functions are thread-safe; the handle is immutable after
//! construction.

use std::ffi::CStr;
use std::os::raw::{c_char, c_int};

use qrprod::closed;
use qrprod::error::Error;
use qrprod::invariants;
use qrprod::lucas;
use qrprod::modular::{jacobi_raw, legendre, OddPrime, Sign};
use qrprod::products::{product_t, QuadraticForm};

pub const QRPROD_OK: c_int = 0;
/// An argument was outside the stated domain of the operation.
pub const QRPROD_ERR_DOMAIN: c_int = 1;
pub const QRPROD_ERR_NOT_INVERTIBLE: c_int = 2;
pub const QRPROD_ERR_INCONSISTENT: c_int = 3;
pub const QRPROD_ERR_UNREACHABLE: c_int = 4;
pub const QRPROD_ERR_CASE_FALLTHROUGH: c_int = 5;
pub const QRPROD_ERR_INTEGRITY: c_int = 6;
pub const QRPROD_ERR_UNKNOWN_ITEM: c_int = 7;
pub const QRPROD_ERR_IO: c_int = 8;
/// A required pointer argument was null, or a string was not valid.
pub const QRPROD_ERR_NULL: c_int = -1;

fn err_code(e: &Error) -> c_int {
    match e {
        Error::Domain(_) => QRPROD_ERR_DOMAIN,
        Error::NotInvertible { .. } => QRPROD_ERR_NOT_INVERTIBLE,
        Error::Inconsistent(_) => QRPROD_ERR_INCONSISTENT,
        Error::Unreachable(_) => QRPROD_ERR_UNREACHABLE,
        Error::CaseFallthrough { .. } => QRPROD_ERR_CASE_FALLTHROUGH,
        Error::Integrity(_) => QRPROD_ERR_INTEGRITY,
        Error::UnknownItem(_) => QRPROD_ERR_UNKNOWN_ITEM,
        Error::Io(_) => QRPROD_ERR_IO,
    }
}

/// Opaque validated odd prime.
pub struct QrprodPrime {
    inner: OddPrime,
}

/// Validate `p` and allocate a handle into `out`. The handle must be
/// released with `qrprod_prime_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_prime_new(p: u64, out: *mut *mut QrprodPrime) -> c_int {
    if out.is_null() {
        return QRPROD_ERR_NULL;
    }
    match OddPrime::new(p) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(QrprodPrime { inner }));
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

/// Release a handle from `qrprod_prime_new`. Null is a no-op.
///
/// # Safety
/// `h` must be null or a pointer returned by `qrprod_prime_new` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qrprod_prime_free(h: *mut QrprodPrime) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

unsafe fn prime_of(h: *const QrprodPrime) -> Option<OddPrime> {
    h.as_ref().map(|q| q.inner)
}

/// Jacobi symbol `(x/n)` for odd `n >= 1`; writes -1, 0, or 1.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_jacobi(x: i64, n: u64, out: *mut c_int) -> c_int {
    if out.is_null() {
        return QRPROD_ERR_NULL;
    }
    if n % 2 == 0 || n == 0 {
        return QRPROD_ERR_DOMAIN;
    }
    *out = jacobi_raw(x, n) as c_int;
    QRPROD_OK
}

/// Legendre symbol `(x/p)`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_legendre(
    h: *const QrprodPrime,
    x: i64,
    out: *mut c_int,
) -> c_int {
    let (Some(p), false) = (prime_of(h), out.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    *out = legendre(x, p).value() as c_int;
    QRPROD_OK
}

/// Lucas pair `(u_k(A), v_k(A)) mod p`.
///
/// # Safety
/// `h` must be a live handle; `u` and `v` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qrprod_lucas_pair(
    h: *const QrprodPrime,
    a: i64,
    k: u64,
    u: *mut u64,
    v: *mut u64,
) -> c_int {
    let (Some(p), false) = (prime_of(h), u.is_null() || v.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    let pair = lucas::lucas_pair_mod(a, k, p);
    *u = pair.u;
    *v = pair.v;
    QRPROD_OK
}

/// Brute-force `T_p(a,b,c)`; `skipped` counts index pairs where `p`
/// divided the factor. O(p^2).
///
/// # Safety
/// `h` must be a live handle; `value` and `skipped` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qrprod_product_t(
    h: *const QrprodPrime,
    a: i64,
    b: i64,
    c: i64,
    value: *mut u64,
    skipped: *mut u64,
) -> c_int {
    let (Some(p), false) = (prime_of(h), value.is_null() || skipped.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    let r = product_t(&QuadraticForm::new(a, b, c), p);
    *value = r.value;
    *skipped = r.skipped;
    QRPROD_OK
}

/// Closed form of `T_p(1,-A,-1)`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_closed_t_general(
    h: *const QrprodPrime,
    a: i64,
    out: *mut u64,
) -> c_int {
    let (Some(p), false) = (prime_of(h), out.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    match closed::closed_t_general(a, p) {
        Ok(r) => {
            *out = r.value;
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

/// `h(-4p)` for `p = 1 (mod 4)`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_h_minus_4p(h: *const QrprodPrime, out: *mut u64) -> c_int {
    let (Some(p), false) = (prime_of(h), out.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    match invariants::h_minus_4p(p) {
        Ok(c) => {
            *out = c.h;
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

/// `h(-3p)` for `p = 1 (mod 4)`, `p > 3`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_h_minus_3p(h: *const QrprodPrime, out: *mut u64) -> c_int {
    let (Some(p), false) = (prime_of(h), out.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    match invariants::h_minus_3p(p) {
        Ok(c) => {
            *out = c.h;
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

/// `h(-p)` for `p = 3 (mod 4)`, `p > 3`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_h_minus_p(h: *const QrprodPrime, out: *mut u64) -> c_int {
    let (Some(p), false) = (prime_of(h), out.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    match invariants::h_minus_p(p) {
        Ok(c) => {
            *out = c.h;
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

/// Sign of `((p-1)/2)! mod p` for `p = 3 (mod 4)`, `p > 3`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_mordell_sign(h: *const QrprodPrime, out: *mut c_int) -> c_int {
    let (Some(p), false) = (prime_of(h), out.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    match invariants::mordell_sign(p) {
        Ok(s) => {
            *out = s.value() as c_int;
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

/// Normalized decomposition `p = x^2 + y^2` with `x = 1 (mod 4)` and
/// `y = ((p-1)/2)! x (mod p)`; requires `p = 1 (mod 4)`.
///
/// # Safety
/// `h` must be a live handle; `x` and `y` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qrprod_two_squares(
    h: *const QrprodPrime,
    x: *mut i64,
    y: *mut i64,
) -> c_int {
    let (Some(p), false) = (prime_of(h), x.is_null() || y.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    match invariants::two_square_decomposition(p) {
        Ok(t) => {
            *x = t.x;
            *y = t.y;
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

/// Predicted sign for conjecture `id` ("7.1" .. "7.10") with variant
/// selector `delta` in {-1, +1}; writes -1 or 1.
///
/// # Safety
/// `h` must be a live handle, `id` a valid C string, `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn qrprod_conjecture_rhs(
    h: *const QrprodPrime,
    id: *const c_char,
    delta: c_int,
    out: *mut c_int,
) -> c_int {
    let (Some(p), false) = (prime_of(h), id.is_null() || out.is_null()) else {
        return QRPROD_ERR_NULL;
    };
    let Ok(id) = CStr::from_ptr(id).to_str() else {
        return QRPROD_ERR_NULL;
    };
    let Ok(d) = Sign::from_i64(delta as i64) else {
        return QRPROD_ERR_DOMAIN;
    };
    match closed::conjecture_rhs(id, d, p) {
        Ok(s) => {
            *out = s.value() as c_int;
            QRPROD_OK
        }
        Err(e) => err_code(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn handle(p: u64) -> *mut QrprodPrime {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { qrprod_prime_new(p, &mut h) }, QRPROD_OK);
        h
    }

    #[test]
    fn prime_lifecycle_and_validation() {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { qrprod_prime_new(15, &mut h) }, QRPROD_ERR_DOMAIN);
        assert_eq!(unsafe { qrprod_prime_new(2, &mut h) }, QRPROD_ERR_DOMAIN);
        assert_eq!(
            unsafe { qrprod_prime_new(13, ptr::null_mut()) },
            QRPROD_ERR_NULL
        );
        let h = handle(13);
        unsafe { qrprod_prime_free(h) };
        unsafe { qrprod_prime_free(ptr::null_mut()) };
    }

    #[test]
    fn symbols() {
        let mut v = 0;
        assert_eq!(unsafe { qrprod_jacobi(7, 15, &mut v) }, QRPROD_OK);
        assert_eq!(v, -1);
        assert_eq!(unsafe { qrprod_jacobi(7, 4, &mut v) }, QRPROD_ERR_DOMAIN);
        let h = handle(13);
        assert_eq!(unsafe { qrprod_legendre(h, 5, &mut v) }, QRPROD_OK);
        assert_eq!(v, -1);
        assert_eq!(
            unsafe { qrprod_legendre(ptr::null(), 5, &mut v) },
            QRPROD_ERR_NULL
        );
        unsafe { qrprod_prime_free(h) };
    }

    #[test]
    fn lucas_and_products() {
        let h = handle(7);
        let (mut u, mut v) = (0u64, 0u64);
        assert_eq!(unsafe { qrprod_lucas_pair(h, 1, 5, &mut u, &mut v) }, QRPROD_OK);
        assert_eq!((u, v), (5, 4)); // F_5 = 5, L_5 = 11 = 4 (mod 7)
        let (mut value, mut skipped) = (0u64, 0u64);
        assert_eq!(
            unsafe { qrprod_product_t(h, 2, 5, 2, &mut value, &mut skipped) },
            QRPROD_OK
        );
        assert_eq!(value, 1);
        let mut closed = 0u64;
        assert_eq!(unsafe { qrprod_closed_t_general(h, 1, &mut closed) }, QRPROD_OK);
        assert_eq!(closed, 6);
        unsafe { qrprod_prime_free(h) };
    }

    #[test]
    fn class_numbers_and_two_squares() {
        let h13 = handle(13);
        let mut out = 0u64;
        assert_eq!(unsafe { qrprod_h_minus_4p(h13, &mut out) }, QRPROD_OK);
        assert_eq!(out, 2);
        assert_eq!(unsafe { qrprod_h_minus_3p(h13, &mut out) }, QRPROD_OK);
        assert_eq!(out, 4);
        let (mut x, mut y) = (0i64, 0i64);
        assert_eq!(unsafe { qrprod_two_squares(h13, &mut x, &mut y) }, QRPROD_OK);
        assert_eq!((x, y), (-3, -2));
        // domain errors cross the boundary as codes
        assert_eq!(unsafe { qrprod_h_minus_p(h13, &mut out) }, QRPROD_ERR_DOMAIN);
        unsafe { qrprod_prime_free(h13) };

        let h23 = handle(23);
        assert_eq!(unsafe { qrprod_h_minus_p(h23, &mut out) }, QRPROD_OK);
        assert_eq!(out, 3);
        let mut s = 0;
        assert_eq!(unsafe { qrprod_mordell_sign(h23, &mut s) }, QRPROD_OK);
        assert_eq!(s, 1);
        unsafe { qrprod_prime_free(h23) };
    }

    #[test]
    fn conjecture_rhs_across_boundary() {
        let h = handle(7);
        let id = CString::new("7.1").unwrap();
        let mut s = 0;
        assert_eq!(
            unsafe { qrprod_conjecture_rhs(h, id.as_ptr(), 1, &mut s) },
            QRPROD_OK
        );
        assert_eq!(s, -1);
        let bad = CString::new("7.11").unwrap();
        assert_eq!(
            unsafe { qrprod_conjecture_rhs(h, bad.as_ptr(), 1, &mut s) },
            QRPROD_ERR_UNKNOWN_ITEM
        );
        assert_eq!(
            unsafe { qrprod_conjecture_rhs(h, id.as_ptr(), 3, &mut s) },
            QRPROD_ERR_DOMAIN
        );
        unsafe { qrprod_prime_free(h) };
    }
}
