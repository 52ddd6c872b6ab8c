//! C ABI over `combgenus`.
//!
//! Curves and subspaces cross the boundary as opaque handles. Every function
//! returns a [`CgStatus`]; results go through out-pointers, and the message
//! of the most recent failure on the calling thread is available from
//! [`cg_last_error_message`]. Strings returned to the caller are owned by the
//! caller and must be released with [`cg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use combgenus::algebra::BaseField;
use combgenus::classify::classify;
use combgenus::function_field::{Curve, Divisor};
use combgenus::riemann_roch::rr_space;
use combgenus::subspace::Subspace;
use combgenus::Error;

/// Result code of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed curve, field, element or divisor, or mismatched operands.
    Parse = 3,
    /// A place of degree above 2, or a factor that could not be certified.
    Unsupported = 4,
    /// An arithmetic precondition failed, such as division by zero.
    Math = 5,
    /// An internal consistency check failed.
    TheoremViolation = 6,
    /// The library panicked; the handles passed in should be discarded.
    Panic = 7,
}

/// A curve `y^2 = D(x)` or the projective line over Q or F_p.
pub struct CgCurve {
    curve: Arc<Curve>,
}

/// A finite-dimensional subspace of the function field of a curve.
pub struct CgSubspace {
    space: Subspace,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::Invalid(_) | Error::Mismatch(_) | Error::Io(_) => {
                CgStatus::Parse
            }
            Error::UnsupportedPlace(_) | Error::Unsplit(_) => CgStatus::Unsupported,
            Error::DivisionByZero
            | Error::NotSquare(_)
            | Error::PrecisionExhausted(_)
            | Error::Hypothesis(_)
            | Error::ResamplingExhausted(_) => CgStatus::Math,
            Error::TheoremViolation(_) => CgStatus::TheoremViolation,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs `f`, records any failure for `cg_last_error_message` and maps it to
/// a status code.
fn guard(f: impl FnOnce() -> Outcome) -> CgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("panic: {msg}"));
            CgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CgStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn string_out(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(CgStatus::Parse, "result contains a NUL byte".into()))
}

fn json_out<T: serde::Serialize>(v: &T) -> Result<*mut c_char, Failure> {
    string_out(serde_json::to_string(v).expect("reports serialize"))
}

/// Parses a curve. `model` is `"rational"` or `"y^2 = D(x)"`; `field` is
/// `"Q"` or `"Fp:<p>"`, and NULL selects F_10007.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_new(
    model: *const c_char,
    field: *const c_char,
    out: *mut *mut CgCurve,
) -> CgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let model = str_arg(model, "model")?;
        let field = if field.is_null() {
            BaseField::default_prime()
        } else {
            str_arg(field, "field")?.parse::<BaseField>()?.validated()?
        };
        let curve = Curve::parse(model, field)?;
        *out = Box::into_raw(Box::new(CgCurve { curve }));
        Ok(())
    })
}

/// Releases a curve. Subspaces built on it stay valid.
///
/// # Safety
/// `curve` must come from `cg_curve_new` and not have been freed; NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_free(curve: *mut CgCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Writes the genus of the curve to `out`.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_genus(curve: *const CgCurve, out: *mut usize) -> CgStatus {
    guard(|| {
        let c = ref_arg(curve, "curve")?;
        *out_arg(out, "out")? = c.curve.genus();
        Ok(())
    })
}

/// The span of `n` elements given as expressions in `x` and `y`.
///
/// # Safety
/// `elems` must point to `n` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_subspace_new(
    curve: *const CgCurve,
    elems: *const *const c_char,
    n: usize,
    out: *mut *mut CgSubspace,
) -> CgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let c = ref_arg(curve, "curve")?;
        if elems.is_null() && n > 0 {
            return Err(null("elems"));
        }
        let exprs: Vec<&str> = (0..n)
            .map(|i| str_arg(*elems.add(i), "element"))
            .collect::<Result<_, _>>()?;
        let space = Subspace::parse(&c.curve, &exprs)?;
        *out = Box::into_raw(Box::new(CgSubspace { space }));
        Ok(())
    })
}

/// Releases a subspace.
///
/// # Safety
/// `s` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cg_subspace_free(s: *mut CgSubspace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes `dim S` to `out`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_subspace_dim(s: *const CgSubspace, out: *mut usize) -> CgStatus {
    guard(|| {
        let s = ref_arg(s, "subspace")?;
        *out_arg(out, "out")? = s.space.dim();
        Ok(())
    })
}

/// Writes the combinatorial genus `dim S^2 - 2 dim S + 1` to `out`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_subspace_gamma(s: *const CgSubspace, out: *mut i64) -> CgStatus {
    guard(|| {
        let s = ref_arg(s, "subspace")?;
        *out_arg(out, "out")? = s.space.gamma();
        Ok(())
    })
}

/// The product subspace `ST`, spanned by all `st`.
///
/// # Safety
/// `s` and `t` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_subspace_product(
    s: *const CgSubspace,
    t: *const CgSubspace,
    out: *mut *mut CgSubspace,
) -> CgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let (s, t) = (ref_arg(s, "s")?, ref_arg(t, "t")?);
        let space = s.space.product(&t.space)?;
        *out = Box::into_raw(Box::new(CgSubspace { space }));
        Ok(())
    })
}

/// A JSON array of basis element strings.
///
/// # Safety
/// `s` must be a live handle and `out` writable. Free the result with
/// `cg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cg_subspace_basis_json(
    s: *const CgSubspace,
    out: *mut *mut c_char,
) -> CgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        *out = json_out(&ref_arg(s, "subspace")?.space.basis_strings())?;
        Ok(())
    })
}

/// The divisor `div(S)` as a JSON array of `{place_id, coeff, degree}`.
///
/// # Safety
/// `s` must be a live handle and `out` writable. Free the result with
/// `cg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cg_subspace_divisor_json(
    s: *const CgSubspace,
    out: *mut *mut c_char,
) -> CgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let d = ref_arg(s, "subspace")?.space.divisor()?;
        *out = json_out(&d.to_terms())?;
        Ok(())
    })
}

/// The Riemann-Roch space `L(D)` for a divisor such as `"3*O + P(0,0)"`.
/// Writes NULL to `out` when `L(D) = 0`.
///
/// # Safety
/// `curve` must be a live handle, `divisor` NUL-terminated and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cg_rr_space(
    curve: *const CgCurve,
    divisor: *const c_char,
    out: *mut *mut CgSubspace,
) -> CgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let c = ref_arg(curve, "curve")?;
        let d = Divisor::parse(&c.curve, str_arg(divisor, "divisor")?)?;
        if let Some(space) = rr_space(&c.curve, &d)?.space {
            *out = Box::into_raw(Box::new(CgSubspace { space }));
        }
        Ok(())
    })
}

/// The full classification of `S` as a JSON object.
///
/// # Safety
/// `s` must be a live handle and `out` writable. Free the result with
/// `cg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cg_classify_json(s: *const CgSubspace, out: *mut *mut c_char) -> CgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let c = classify(&ref_arg(s, "subspace")?.space)?;
        *out = json_out(&c.to_report())?;
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last call on this thread, empty after a success.
/// The pointer stays valid until the next call into the library on the
/// same thread.
#[no_mangle]
pub extern "C" fn cg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
