use std::ffi::{CStr, CString};
use std::ptr;

use logderiv_ffi::*;

fn parse(text: &str) -> (LdStatus, *mut LdArrangement) {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { ld_arrangement_parse(c.as_ptr(), &mut out) };
    (status, out)
}

fn last_error() -> String {
    let p = ld_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn ziegler_round_trip() {
    let (status, a) = parse(logderiv::ziegler::ARR_TEXT);
    assert_eq!(status, LdStatus::Ok);
    assert!(ld_last_error().is_null());
    let text = CString::new(logderiv::ziegler::THETA_TEXT).unwrap();
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(ld_derivation_parse(a, text.as_ptr(), &mut d), LdStatus::Ok);
        let mut log = -1;
        assert_eq!(ld_is_logarithmic(a, d, &mut log), LdStatus::Ok);
        assert_eq!(log, 1);
        let mut k = ptr::null_mut();
        assert_eq!(ld_k_vector(a, d, &mut k), LdStatus::Ok);
        let lines: Vec<String> = CStr::from_ptr(k).to_str().unwrap().lines().map(String::from).collect();
        ld_string_free(k);
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[8], "0");
        let quotients = logderiv::ziegler::printed_quotients();
        assert_eq!(lines[3], quotients[0].to_string());
        let mut s = ptr::null_mut();
        assert_eq!(ld_derivation_to_string(d, &mut s), LdStatus::Ok);
        let (_, theta) = logderiv::ziegler::emit_ziegler_fixture();
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), theta.to_der_string());
        ld_string_free(s);
        let mut dim = 0;
        assert_eq!(ld_graded_dim(a, 5, &mut dim), LdStatus::Ok);
        assert_eq!(dim, 16);
        ld_derivation_free(d);
        ld_arrangement_free(a);
    }
}

#[test]
fn errors_map_to_codes() {
    let (status, a) = parse("2 2\n1 0\n2 0\n");
    assert_eq!(status, LdStatus::DuplicateHyperplane);
    assert!(a.is_null());
    assert!(last_error().contains("coincide"));
    assert_eq!(parse("2 2\n1 0\n0 q\n").0, LdStatus::ParseError);
    assert_eq!(parse("3 3\n1 0 0\n0 1 0\n1 1 0\n").0, LdStatus::NonEssential);

    let (_, a) = parse("2 2\n1 0\n0 1\n");
    let text = CString::new("x2\n0\n").unwrap();
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(ld_derivation_parse(a, text.as_ptr(), &mut d), LdStatus::Ok);
        let mut log = -1;
        assert_eq!(ld_is_logarithmic(a, d, &mut log), LdStatus::Ok);
        assert_eq!(log, 0);
        let mut k = ptr::null_mut();
        assert_eq!(ld_k_vector(a, d, &mut k), LdStatus::NotLogarithmic);
        assert!(k.is_null());
        ld_derivation_free(d);
        ld_arrangement_free(a);
    }
}

#[test]
fn null_and_invalid_arguments() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(ld_arrangement_parse(ptr::null(), &mut out), LdStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(ld_arrangement_parse(bytes.as_ptr().cast(), &mut out), LdStatus::InvalidUtf8);
        let c = CString::new("2 2\n1 0\n0 1\n").unwrap();
        assert_eq!(ld_arrangement_parse(c.as_ptr(), ptr::null_mut()), LdStatus::NullPointer);
        let mut dim = 0;
        assert_eq!(ld_graded_dim(ptr::null(), 1, &mut dim), LdStatus::NullPointer);
        assert_eq!(ld_arrangement_dim(ptr::null()), 0);
        ld_arrangement_free(ptr::null_mut());
        ld_derivation_free(ptr::null_mut());
        ld_string_free(ptr::null_mut());
    }
}

#[test]
fn free_check_buffer() {
    let (_, a) = parse("3 9\n1 0 0\n0 1 0\n0 0 1\n1 -1 0\n1 1 0\n1 0 -1\n1 0 1\n0 1 -1\n0 1 1\n");
    let mut verdict = LdFreeness::Inconclusive;
    let mut count = 99;
    let mut exps = [0u32; 3];
    unsafe {
        assert_eq!(ld_free_check(a, 5, &mut verdict, exps.as_mut_ptr(), 3, &mut count), LdStatus::Ok);
        assert_eq!((verdict, count, exps), (LdFreeness::Free, 3, [1, 3, 5]));
        assert_eq!(
            ld_free_check(a, 5, &mut verdict, exps.as_mut_ptr(), 2, &mut count),
            LdStatus::DimensionMismatch
        );
        assert_eq!(ld_free_check(a, 2, &mut verdict, ptr::null_mut(), 0, &mut count), LdStatus::Ok);
        assert_eq!((verdict, count), (LdFreeness::Inconclusive, 0));
        ld_arrangement_free(a);
    }
}
