//! C ABI for `fiberpair`.
//!
//! Every function returns an [`FpStatus`]; results come back through out
//! pointers. On failure a message is available from
//! [`fp_last_error_message`] on the same thread. Handles are opaque and must
//! be released with the matching `*_free` function; strings handed out by the
//! library are released with [`fp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use fiberpair::fiber::{self, KodairaType, SpecialFiber, ValidationOptions};
use fiberpair::group::ComponentGroup;
use fiberpair::oracle::{self, ClosedPoint, RationalFunction};
use fiberpair::pairing;
use fiberpair::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    InvalidFiber = 5,
    InvalidArgument = 6,
    NotTorsion = 7,
    Domain = 8,
    Overflow = 9,
    Internal = 10,
}

/// Opaque fiber handle.
pub struct FpFiber {
    inner: SpecialFiber,
}

/// Opaque component group handle.
pub struct FpGroup {
    inner: ComponentGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let mut msg = msg.into();
    msg.retain(|c| c != '\0');
    let c = CString::new(msg).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FpStatus {
    match e {
        Error::Shape(_) | Error::NonPositiveMultiplicity { .. } | Error::Divisibility { .. } => {
            FpStatus::InvalidFiber
        }
        Error::UnknownKodaira(_) | Error::Parse { .. } | Error::Polynomial(_) => FpStatus::Parse,
        Error::Io { .. } => FpStatus::Io,
        Error::Length { .. } => FpStatus::InvalidArgument,
        Error::NotTorsion(_) => FpStatus::NotTorsion,
        Error::BoundExceeded { .. }
        | Error::NotPrime(_)
        | Error::SupportClash(_)
        | Error::NonzeroDegree(_)
        | Error::NotIrreducible(_)
        | Error::NotPMaximal { .. } => FpStatus::Domain,
        Error::Internal(_) => FpStatus::Internal,
    }
}

/// Failure carried out of a guarded body.
struct Fail(FpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type Out<T> = std::result::Result<T, Fail>;

fn guard(body: impl FnOnce() -> Out<()>) -> FpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FpStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside fiberpair");
            FpStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(FpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Out<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(FpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_ints(p: *const i64, len: usize, what: &str) -> Out<Vec<BigInt>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len)
        .iter()
        .map(|&x| BigInt::from(x))
        .collect())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Out<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(p: *mut T, value: T, what: &str) -> Out<()> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

fn to_i64(n: &BigInt, what: &str) -> Out<i64> {
    n.to_i64().ok_or_else(|| {
        Fail(
            FpStatus::Overflow,
            format!("{what} = {n} does not fit in int64"),
        )
    })
}

unsafe fn write_rational(q: &num_rational::BigRational, num: *mut i64, den: *mut i64) -> Out<()> {
    let n = to_i64(q.numer(), "numerator")?;
    let d = to_i64(q.denom(), "denominator")?;
    write(num, n, "num")?;
    write(den, d, "den")
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_from_json(
    json: *const c_char,
    out: *mut *mut FpFiber,
) -> FpStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let inner = fiber::from_json_str(text)?;
        write(out, boxed(FpFiber { inner }), "out")
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_load(path: *const c_char, out: *mut *mut FpFiber) -> FpStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        let inner = fiber::load(path)?;
        write(out, boxed(FpFiber { inner }), "out")
    })
}

/// Built-in configuration such as `"I3"`, `"I*0"` or `"IV*"`.
///
/// # Safety
/// `tag` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_kodaira(tag: *const c_char, out: *mut *mut FpFiber) -> FpStatus {
    guard(|| {
        let kind: KodairaType = read_str(tag, "tag")?.parse()?;
        let inner = fiber::kodaira(kind)?;
        write(out, boxed(FpFiber { inner }), "out")
    })
}

/// # Safety
/// `f` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_free(f: *mut FpFiber) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_save(f: *const FpFiber, path: *const c_char) -> FpStatus {
    guard(|| {
        let f = deref(f, "fiber")?;
        fiber::save(read_str(path, "path")?, &f.inner)?;
        Ok(())
    })
}

/// Canonical JSON text; release with [`fp_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_to_json(f: *const FpFiber, out: *mut *mut c_char) -> FpStatus {
    guard(|| {
        let f = deref(f, "fiber")?;
        let text = fiber::to_json_string(&f.inner)?;
        let c = CString::new(text).map_err(|_| Fail(FpStatus::Internal, "nul in JSON".into()))?;
        write(out, c.into_raw(), "out")
    })
}

/// Sets `*valid` to 1 when every invariant holds, 0 otherwise; the failing
/// checks are described by [`fp_last_error_message`].
///
/// # Safety
/// `f` must be a live handle; `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_validate(
    f: *const FpFiber,
    permissive: c_int,
    valid: *mut c_int,
) -> FpStatus {
    guard(|| {
        let f = deref(f, "fiber")?;
        let opts = if permissive != 0 {
            ValidationOptions::permissive()
        } else {
            ValidationOptions::default()
        };
        let report = fiber::validate_with(&f.inner, opts);
        if !report.passed() {
            let msgs: Vec<String> = report
                .failures()
                .map(|c| format!("{}: {}", c.invariant.key(), c.detail))
                .collect();
            set_error(msgs.join("; "));
        }
        write(valid, c_int::from(report.passed()), "valid")
    })
}

/// # Safety
/// `f` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_component_count(f: *const FpFiber, out: *mut usize) -> FpStatus {
    guard(|| {
        let f = deref(f, "fiber")?;
        write(out, f.inner.nu(), "out")
    })
}

/// gcd of the multiplicities.
///
/// # Safety
/// `f` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_fiber_index(f: *const FpFiber, out: *mut i64) -> FpStatus {
    guard(|| {
        let f = deref(f, "fiber")?;
        write(out, to_i64(&fiber::index(&f.inner), "index")?, "out")
    })
}

/// # Safety
/// `f` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_group_new(f: *const FpFiber, out: *mut *mut FpGroup) -> FpStatus {
    guard(|| {
        let f = deref(f, "fiber")?;
        let inner = ComponentGroup::new(&f.inner)?;
        write(out, boxed(FpGroup { inner }), "out")
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_group_free(g: *mut FpGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of nontrivial invariant factors.
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_group_rank(g: *const FpGroup, out: *mut usize) -> FpStatus {
    guard(|| {
        let g = deref(g, "group")?;
        write(out, g.inner.invariant_factors().len(), "out")
    })
}

/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_group_invariant_factor(
    g: *const FpGroup,
    i: usize,
    out: *mut i64,
) -> FpStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let e = g.inner.invariant_factors().get(i).ok_or_else(|| {
            Fail(
                FpStatus::InvalidArgument,
                format!("no invariant factor {i}"),
            )
        })?;
        write(out, to_i64(e, "invariant factor")?, "out")
    })
}

/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_group_order(g: *const FpGroup, out: *mut i64) -> FpStatus {
    guard(|| {
        let g = deref(g, "group")?;
        write(out, to_i64(g.inner.order(), "order")?, "out")
    })
}

/// The pairing of two torsion vectors of length `len`, as `num/den` with
/// `0 <= num < den`.
///
/// # Safety
/// `g` must be a live handle; `t`, `t_prime` arrays of `len` elements;
/// `num`, `den` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fp_pairing(
    g: *const FpGroup,
    t: *const i64,
    t_prime: *const i64,
    len: usize,
    num: *mut i64,
    den: *mut i64,
) -> FpStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let a = read_ints(t, len, "t")?;
        let b = read_ints(t_prime, len, "t_prime")?;
        let v = g.inner.pairing(&a, &b)?;
        write_rational(v.value(), num, den)
    })
}

/// Total of the horizontal plus vertical decomposition.
///
/// # Safety
/// `f` must be a live handle; `rho_c`, `rho_d` arrays of `len` elements;
/// `num`, `den` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fp_gross_hriljac(
    f: *const FpFiber,
    horizontal: i64,
    rho_c: *const i64,
    rho_d: *const i64,
    len: usize,
    num: *mut i64,
    den: *mut i64,
) -> FpStatus {
    guard(|| {
        let f = deref(f, "fiber")?;
        let c = read_ints(rho_c, len, "rho_c")?;
        let d = read_ints(rho_d, len, "rho_d")?;
        let r = pairing::gross_hriljac(&f.inner, &BigInt::from(horizontal), &c, &d)?;
        write_rational(&r.total, num, den)
    })
}

/// Sets `*extendable`; when 0, `obs_num/obs_den` is the first non-integral
/// probe value mod Z, otherwise `0/1`.
///
/// # Safety
/// `g` must be a live handle; `rho_d` an array of `len` elements; the
/// out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn fp_extendable(
    g: *const FpGroup,
    rho_d: *const i64,
    len: usize,
    extendable: *mut c_int,
    obs_num: *mut i64,
    obs_den: *mut i64,
) -> FpStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let d = read_ints(rho_d, len, "rho_d")?;
        let e = pairing::extendability_test(&g.inner, &d)?;
        let obs = e
            .obstruction()
            .map(|q| q.value().clone())
            .unwrap_or_else(|| num_rational::BigRational::from_integer(BigInt::from(0)));
        write_rational(&obs, obs_num, obs_den)?;
        write(extendable, c_int::from(e.extendable), "extendable")
    })
}

/// Local multiplicity of `num/den` at the point `g = 0` over `p`, by
/// resultants. `den` may be NULL for a polynomial.
///
/// # Safety
/// `g`, `num` NUL-terminated strings; `den` NULL or one; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_oracle_local(
    g: *const c_char,
    num: *const c_char,
    den: *const c_char,
    p: u64,
    out: *mut i64,
) -> FpStatus {
    guard(|| {
        let pt = ClosedPoint::parse(read_str(g, "g")?)?;
        let den = if den.is_null() {
            None
        } else {
            Some(read_str(den, "den")?)
        };
        let f = RationalFunction::parse(read_str(num, "num")?, den)?;
        write(out, oracle::local_multiplicity(&pt, &f, p)?, "out")
    })
}

/// The same number from the length of `Z[x]/(g, h)`.
///
/// # Safety
/// `g`, `h` NUL-terminated strings; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_oracle_length(
    g: *const c_char,
    h: *const c_char,
    p: u64,
    out: *mut i64,
) -> FpStatus {
    guard(|| {
        let pt = ClosedPoint::parse(read_str(g, "g")?)?;
        let h = oracle::parse_poly(read_str(h, "h")?)?;
        write(
            out,
            oracle::local_multiplicity_by_length(&pt, &h, p)?,
            "out",
        )
    })
}

/// Norm of `c` from `Q[x]/(h)` for split `h` such as `"(x-1)^2(x-2)"`,
/// against the product of values at the roots.
///
/// # Safety
/// `h`, `c` NUL-terminated strings; the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn fp_oracle_norm(
    h: *const c_char,
    c: *const c_char,
    lhs_num: *mut i64,
    lhs_den: *mut i64,
    rhs_num: *mut i64,
    rhs_den: *mut i64,
    equal: *mut c_int,
) -> FpStatus {
    guard(|| {
        let factors = oracle::parse_split(read_str(h, "h")?)?;
        let c = oracle::parse_poly(read_str(c, "c")?)?;
        let r = oracle::artinian_norm_check(&factors, &c)?;
        write_rational(&r.lhs, lhs_num, lhs_den)?;
        write_rational(&r.rhs, rhs_num, rhs_den)?;
        write(equal, c_int::from(r.equal), "equal")
    })
}
