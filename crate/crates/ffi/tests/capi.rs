use std::ffi::{CStr, CString};
use std::ptr;

use pj4_ffi::*;

fn context() -> *mut Pj4Context {
    let mut ctx = ptr::null_mut();
    let st = unsafe { pj4_context_new(2, 200_000, 1e-6, &mut ctx) };
    assert_eq!(st, Pj4Status::Ok);
    assert!(!ctx.is_null());
    ctx
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { pj4_string_free(s) };
    out
}

fn last_error(ctx: *const Pj4Context) -> String {
    let p = unsafe { pj4_last_error(ctx) };
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn sphere_sizes() {
    let ctx = context();
    let mut sizes = Vec::new();
    for len in 0..=4 {
        let mut n = 0usize;
        assert_eq!(unsafe { pj4_sphere_size(ctx, len, &mut n) }, Pj4Status::Ok);
        sizes.push(n);
    }
    assert_eq!(sizes, [1, 5, 15, 40, 105]);
    unsafe { pj4_context_free(ctx) };
}

#[test]
fn equality_and_normal_forms() {
    let ctx = context();
    let a = CString::new("s34 s13 s23 s24").unwrap();
    let b = CString::new("s34 s13 s24 s34").unwrap();
    let c = CString::new("s12").unwrap();
    let mut eq = Pj4Equality::NotFound;
    assert_eq!(unsafe { pj4_words_equal(ctx, a.as_ptr(), b.as_ptr(), &mut eq) }, Pj4Status::Ok);
    assert_eq!(eq, Pj4Equality::Equal);
    assert_eq!(unsafe { pj4_words_equal(ctx, a.as_ptr(), c.as_ptr(), &mut eq) }, Pj4Status::Ok);
    assert_eq!(eq, Pj4Equality::ProvenUnequal);

    let mut s = ptr::null_mut();
    let w = CString::new("s12 s12 s13").unwrap();
    assert_eq!(unsafe { pj4_canonical_form(ctx, w.as_ptr(), &mut s) }, Pj4Status::Ok);
    assert_eq!(take(s), "s13");
    let e = CString::new("s12 s12").unwrap();
    assert_eq!(unsafe { pj4_canonical_form(ctx, e.as_ptr(), &mut s) }, Pj4Status::Ok);
    assert_eq!(take(s), "e");
    unsafe { pj4_context_free(ctx) };
}

#[test]
fn error_codes() {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { pj4_context_new(3, 10, 1e-6, &mut ctx) }, Pj4Status::InvalidArgument);
    assert!(ctx.is_null());
    assert_eq!(unsafe { pj4_context_new(2, 10, 1e-6, ptr::null_mut()) }, Pj4Status::NullPointer);

    let ctx = context();
    assert!(unsafe { pj4_last_error(ctx) }.is_null());
    let bad = CString::new("s14").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pj4_canonical_form(ctx, bad.as_ptr(), &mut s) }, Pj4Status::InvalidArgument);
    assert!(s.is_null());
    assert!(last_error(ctx).contains("s14"));
    let unknown = CString::new("s15").unwrap();
    assert_eq!(unsafe { pj4_canonical_form(ctx, unknown.as_ptr(), &mut s) }, Pj4Status::Parse);
    assert_eq!(unsafe { pj4_canonical_form(ctx, ptr::null(), &mut s) }, Pj4Status::NullPointer);
    let mut n = 0usize;
    assert_eq!(unsafe { pj4_sphere_size(ptr::null_mut(), 1, &mut n) }, Pj4Status::NullPointer);
    let cmd = CString::new("nope").unwrap();
    assert_eq!(unsafe { pj4_run_report(ctx, cmd.as_ptr(), &mut s) }, Pj4Status::InvalidArgument);
    assert!(last_error(ctx).contains("nope"));
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { pj4_canonical_form(ctx, invalid.as_ptr().cast(), &mut s) }, Pj4Status::InvalidUtf8);
    unsafe { pj4_context_free(ctx) };
    unsafe { pj4_context_free(ptr::null_mut()) };
    unsafe { pj4_string_free(ptr::null_mut()) };
}

#[test]
fn reports_as_json() {
    let ctx = context();
    let mut s = ptr::null_mut();
    let cmd = CString::new("tietze").unwrap();
    assert_eq!(unsafe { pj4_run_report(ctx, cmd.as_ptr(), &mut s) }, Pj4Status::Ok);
    let json = take(s);
    assert!(json.contains("\"command\": \"tietze\""));
    assert!(json.contains("Z^4 + Z/2"));

    let cmd = CString::new("isocheck-surface").unwrap();
    assert_eq!(unsafe { pj4_run_report(ctx, cmd.as_ptr(), &mut s) }, Pj4Status::Ok);
    assert!(take(s).contains("\"verdict\": \"verified\""));
    unsafe { pj4_context_free(ctx) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(pj4_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/pj4.h")).unwrap();
    for name in [
        "typedef struct Pj4Context Pj4Context;",
        "pj4_context_new",
        "pj4_context_free",
        "pj4_last_error",
        "pj4_string_free",
        "pj4_sphere_size",
        "pj4_canonical_form",
        "pj4_words_equal",
        "pj4_run_report",
        "PJ4_STATUS_BUDGET_EXHAUSTED = 5",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
