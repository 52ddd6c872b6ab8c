use std::ffi::{c_char, CStr, CString};
use std::ptr;

use combgenus_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { cg_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cg_last_error_message()) }.to_str().unwrap().to_string()
}

fn curve(model: &str, field: Option<&str>) -> *mut CgCurve {
    let m = c(model);
    let f = field.map(c);
    let mut out = ptr::null_mut();
    let st = unsafe { cg_curve_new(m.as_ptr(), f.as_ref().map_or(ptr::null(), |f| f.as_ptr()), &mut out) };
    assert_eq!(st, CgStatus::Ok, "{}", last_error());
    out
}

fn subspace(cv: *const CgCurve, elems: &[&str]) -> *mut CgSubspace {
    let owned: Vec<CString> = elems.iter().map(|e| c(e)).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|e| e.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let st = unsafe { cg_subspace_new(cv, ptrs.as_ptr(), ptrs.len(), &mut out) };
    assert_eq!(st, CgStatus::Ok, "{}", last_error());
    out
}

#[test]
fn elliptic_gamma_and_product() {
    let cv = curve("y^2 = x^3 - x", None);
    let mut g = 0usize;
    assert_eq!(unsafe { cg_curve_genus(cv, &mut g) }, CgStatus::Ok);
    assert_eq!(g, 1);
    let s = subspace(cv, &["1", "x", "y", "x^2", "x*y"]);
    let (mut dim, mut gamma) = (0usize, -1i64);
    unsafe {
        assert_eq!(cg_subspace_dim(s, &mut dim), CgStatus::Ok);
        assert_eq!(cg_subspace_gamma(s, &mut gamma), CgStatus::Ok);
    }
    assert_eq!((dim, gamma), (5, 1));
    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { cg_subspace_product(s, s, &mut sq) }, CgStatus::Ok);
    assert_eq!(unsafe { cg_subspace_dim(sq, &mut dim) }, CgStatus::Ok);
    assert_eq!(dim, 10);
    unsafe {
        cg_subspace_free(sq);
        cg_subspace_free(s);
        cg_curve_free(cv);
    }
}

#[test]
fn rr_space_and_divisor() {
    let cv = curve("y^2 = x^3 - x", Some("Q"));
    let d = c("4*O");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cg_rr_space(cv, d.as_ptr(), &mut s) }, CgStatus::Ok);
    let mut dim = 0usize;
    assert_eq!(unsafe { cg_subspace_dim(s, &mut dim) }, CgStatus::Ok);
    assert_eq!(dim, 4);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cg_subspace_divisor_json(s, &mut out) }, CgStatus::Ok);
    // div(S) is the smallest D with S ⊆ L(D); O is the place at infinity.
    let terms: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(terms, serde_json::json!([{"place_id": "Pinf", "coeff": 4, "degree": 1}]));
    assert_eq!(unsafe { cg_subspace_basis_json(s, &mut out) }, CgStatus::Ok);
    let basis: Vec<String> = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(basis.len(), 4);

    // L(D) = 0 for negative degree.
    let neg = c("-1*O");
    let mut empty = ptr::null_mut();
    assert_eq!(unsafe { cg_rr_space(cv, neg.as_ptr(), &mut empty) }, CgStatus::Ok);
    assert!(empty.is_null());
    unsafe {
        cg_subspace_free(s);
        cg_curve_free(cv);
    }
}

#[test]
fn classification_json() {
    let cv = curve("rational", Some("Q"));
    let s = subspace(cv, &["1", "x^2", "x^3", "x^4"]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cg_classify_json(s, &mut out) }, CgStatus::Ok);
    let r: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(r["form"]["type"], "Genus0TypeII");
    assert_eq!(r["genus"], 0);
    unsafe {
        cg_subspace_free(s);
        cg_curve_free(cv);
    }
}

#[test]
fn errors_report_status_and_message() {
    let mut cv = ptr::null_mut();
    let bad = c("y^2 = x^2");
    assert_eq!(unsafe { cg_curve_new(bad.as_ptr(), ptr::null(), &mut cv) }, CgStatus::Parse);
    assert!(cv.is_null());
    assert!(!last_error().is_empty());

    let field = c("Fp:2");
    let rational = c("rational");
    assert_eq!(unsafe { cg_curve_new(rational.as_ptr(), field.as_ptr(), &mut cv) }, CgStatus::Parse);

    assert_eq!(unsafe { cg_curve_new(ptr::null(), ptr::null(), &mut cv) }, CgStatus::NullPointer);
    assert_eq!(unsafe { cg_curve_new(rational.as_ptr(), ptr::null(), ptr::null_mut()) }, CgStatus::NullPointer);

    let invalid = [0x79u8, 0xff, 0];
    let st = unsafe { cg_curve_new(invalid.as_ptr() as *const c_char, ptr::null(), &mut cv) };
    assert_eq!(st, CgStatus::InvalidUtf8);

    let good = curve("rational", None);
    let elems = [c("1/(x-x)")];
    let ptrs = [elems[0].as_ptr()];
    let mut s = ptr::null_mut();
    let st = unsafe { cg_subspace_new(good, ptrs.as_ptr(), 1, &mut s) };
    assert_ne!(st, CgStatus::Ok);
    assert!(s.is_null());

    let mut dim = 0usize;
    assert_eq!(unsafe { cg_subspace_dim(ptr::null(), &mut dim) }, CgStatus::NullPointer);
    assert_eq!(last_error(), "subspace is NULL");
    assert_eq!(unsafe { cg_curve_genus(good, &mut dim) }, CgStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe {
        cg_curve_free(good);
        cg_curve_free(ptr::null_mut());
        cg_string_free(ptr::null_mut());
    }
}
