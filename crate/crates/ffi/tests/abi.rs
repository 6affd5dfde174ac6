use std::ffi::{CStr, CString};
use std::ptr;

use legendre_ffi::*;

fn alpha(text: &str) -> *mut LsAlpha {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ls_alpha_parse(c.as_ptr(), &mut out) }, LsStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ls_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn sums_match_the_library() {
    let a = alpha("3/8");
    for p in [3u64, 5, 101, 997] {
        let mut v = 0;
        assert_eq!(unsafe { ls_legendre_sum(a, p, &mut v) }, LsStatus::Ok);
        let want = legendre_core::charsum::legendre_sum(&legendre_core::Alpha::rational(3, 8).unwrap(), p).unwrap();
        assert_eq!(v, want);
        let mut table = ptr::null_mut();
        assert_eq!(unsafe { ls_qr_table_new(p, &mut table) }, LsStatus::Ok);
        let mut w = 0;
        assert_eq!(unsafe { ls_qr_table_sum(table, a, &mut w) }, LsStatus::Ok);
        assert_eq!(v, w);
        let mut s = 0;
        assert_eq!(unsafe { ls_qr_table_symbol(table, p as i64, &mut s) }, LsStatus::Ok);
        assert_eq!(s, 0);
        unsafe { ls_qr_table_free(table) };
    }
    unsafe { ls_alpha_free(a) };
}

#[test]
fn density_counts() {
    let a = alpha("1/12");
    let mut c = LsDensityCounts::default();
    assert_eq!(unsafe { ls_density_scan(a, 1000, LS_COMPARISON_GE, &mut c) }, LsStatus::Ok);
    assert_eq!((c.primes, c.nonneg), (1000, 884));
    assert_eq!(c.nonneg, c.strictpos + c.zero);
    assert_eq!(unsafe { ls_density_scan(a, 10, 9, &mut c) }, LsStatus::Domain);
    unsafe { ls_alpha_free(a) };
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ls_alpha_parse(ptr::null(), &mut out) }, LsStatus::NullPointer);
    assert!(out.is_null());
    let bad = CString::new("1/0").unwrap();
    assert_eq!(unsafe { ls_alpha_parse(bad.as_ptr(), &mut out) }, LsStatus::Domain);
    assert!(last_error().contains("1/0"));
    assert_eq!(unsafe { ls_alpha_rational(1, 3, ptr::null_mut()) }, LsStatus::NullPointer);

    let a = alpha("1/7");
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { ls_euler_new(a, LS_PARITY_PLUS, 100, &mut e) }, LsStatus::Unsupported);
    assert!(e.is_null());
    let mut v = 0;
    assert_eq!(unsafe { ls_legendre_sum(a, 9, &mut v) }, LsStatus::Domain);
    assert_eq!(unsafe { ls_legendre_sum(ptr::null(), 7, &mut v) }, LsStatus::NullPointer);
    assert_eq!(unsafe { ls_legendre_sum(a, 7, &mut v) }, LsStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { ls_alpha_free(a) };

    for s in [LsStatus::Ok, LsStatus::Panic, LsStatus::Utf8] {
        assert!(!unsafe { CStr::from_ptr(ls_status_str(s)) }.to_bytes().is_empty());
    }
}

#[test]
fn model_evaluations() {
    let third = alpha("1/3");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ls_sample_new(3, 1, &mut s) }, LsStatus::Ok);
    let mut x = 0;
    assert_eq!(unsafe { ls_sample_value(s, 0, &mut x) }, LsStatus::Domain);
    let (mut x2, mut x3, mut x6) = (0, 0, 0);
    unsafe {
        ls_sample_value(s, 2, &mut x2);
        ls_sample_value(s, 3, &mut x3);
        ls_sample_value(s, 6, &mut x6);
    }
    assert_eq!(x6, x2 * x3);

    let mut e = ptr::null_mut();
    assert_eq!(unsafe { ls_euler_new(third, LS_PARITY_MINUS, 1000, &mut e) }, LsStatus::Ok);
    let mut v = 0.0;
    assert_eq!(unsafe { ls_euler_eval(e, s, &mut v) }, LsStatus::Ok);
    assert!(v > 0.0);
    let mut series = 0.0;
    assert_eq!(unsafe { ls_series_eval(third, LS_PARITY_MINUS, s, 100_000, &mut series) }, LsStatus::Ok);
    assert!((series - v).abs() < 0.1 * v, "{series} {v}");
    assert_eq!(unsafe { ls_series_eval(third, 5, s, 10, &mut series) }, LsStatus::Domain);

    let mut p = LsPositivity::default();
    assert_eq!(unsafe { ls_estimate_positivity(third, LS_PARITY_MINUS, 200, 0, 100, &mut p) }, LsStatus::Ok);
    assert_eq!((p.samples, p.nonnegative), (200, 200));

    let mut c = LsCertification::default();
    assert_eq!(unsafe { ls_certify(third, LS_CONSTANTS_CONSERVATIVE, &mut c) }, LsStatus::Ok);
    assert!(c.certified && c.c_lower == 1.0);
    assert_eq!(unsafe { ls_certify(third, 3, &mut c) }, LsStatus::Domain);
    unsafe {
        ls_euler_free(e);
        ls_sample_free(s);
        ls_alpha_free(third);
    }
}
