use std::ffi::{CStr, CString};
use std::ptr;

use dinterval_ffi::*;

const TRIANGLE: &str = r#"{"d":2,"separated":false,"line_lengths":[3],
  "edges":[[{"line":0,"lo":1,"hi":1},{"line":0,"lo":2,"hi":2}],
           [{"line":0,"lo":2,"hi":2},{"line":0,"lo":3,"hi":3}],
           [{"line":0,"lo":1,"hi":1},{"line":0,"lo":3,"hi":3}]]}"#;

fn last_error() -> String {
    unsafe { CStr::from_ptr(di_last_error()) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { di_string_free(s) };
    out
}

fn parse(json: &str) -> Result<*mut DiFamily, DiStatus> {
    let c = CString::new(json).unwrap();
    let mut f = ptr::null_mut();
    match unsafe { di_family_from_json(c.as_ptr(), &mut f) } {
        DiStatus::Ok => Ok(f),
        s => Err(s),
    }
}

#[test]
fn triangle_invariants() {
    let f = parse(TRIANGLE).unwrap();
    let mut v = 0u64;
    unsafe {
        assert_eq!(di_nu_w(f, 0, &mut v), DiStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(di_tau_w(f, 0, &mut v), DiStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(di_chi_e(f, 0, &mut v), DiStatus::Ok);
        assert_eq!(v, 3);
        let mut s = ptr::null_mut();
        assert_eq!(di_tau_star_w(f, &mut s), DiStatus::Ok);
        assert_eq!(take(s), "3/2");
        let mut n = 0usize;
        assert_eq!(di_family_edge_count(f, &mut n), DiStatus::Ok);
        assert_eq!(n, 3);
        di_family_free(f);
    }
}

#[test]
fn json_round_trip() {
    let f = parse(TRIANGLE).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { di_family_to_json(f, &mut s) }, DiStatus::Ok);
    let text = take(s);
    let g = parse(&text).unwrap();
    let mut s2 = ptr::null_mut();
    assert_eq!(unsafe { di_family_to_json(g, &mut s2) }, DiStatus::Ok);
    assert_eq!(take(s2), text);
    unsafe {
        di_family_free(f);
        di_family_free(g);
    }
}

#[test]
fn walecki_verify_report() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { di_gen_walecki(3, &mut f) }, DiStatus::Ok);
    let mut s = ptr::null_mut();
    let mut ok = false;
    assert_eq!(unsafe { di_verify_json(f, 0, &mut s, &mut ok) }, DiStatus::Ok);
    assert!(ok);
    let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(report["invariants"]["values"]["tau_star"], "3/1");
    assert_eq!(report["invariants"]["values"]["nu"], "1/1");
    unsafe { di_family_free(f) };
}

#[test]
fn errors_are_reported() {
    assert_eq!(parse("{").unwrap_err(), DiStatus::InvalidInstance);
    assert!(last_error().contains("malformed"), "{}", last_error());

    let overlapping = r#"{"d":1,"separated":false,"line_lengths":[5],"edges":[[{"line":0,"lo":1,"hi":9}]]}"#;
    assert_eq!(parse(overlapping).unwrap_err(), DiStatus::InvalidInstance);

    let mut f = ptr::null_mut();
    assert_eq!(unsafe { di_gen_walecki(1, &mut f) }, DiStatus::InvalidArgument);
    assert!(f.is_null());

    let mut v = 0;
    assert_eq!(unsafe { di_nu_w(ptr::null(), 0, &mut v) }, DiStatus::NullPointer);
    assert_eq!(unsafe { di_family_from_json(ptr::null(), &mut f) }, DiStatus::NullPointer);

    let bytes = [b'{', 0xff, 0];
    let r = unsafe { di_family_from_json(bytes.as_ptr().cast(), &mut f) };
    assert_eq!(r, DiStatus::InvalidUtf8);
}

#[test]
fn budget_is_enforced() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { di_gen_walecki(4, &mut f) }, DiStatus::Ok);
    let mut v = 0;
    assert_eq!(unsafe { di_tau_w(f, 2, &mut v) }, DiStatus::BudgetExceeded);
    assert!(last_error().contains("budget"));
    assert_eq!(unsafe { di_tau_w(f, 0, &mut v) }, DiStatus::Ok);
    assert_eq!(v, 4);
    assert_eq!(last_error(), "");
    unsafe { di_family_free(f) };
}

#[test]
fn free_accepts_null() {
    unsafe {
        di_family_free(ptr::null_mut());
        di_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/dinterval.h")).unwrap();
    for name in [
        "di_last_error",
        "di_family_from_json",
        "di_gen_walecki",
        "di_family_free",
        "di_string_free",
        "di_family_to_json",
        "di_family_edge_count",
        "di_nu_w",
        "di_tau_w",
        "di_chi_e",
        "di_tau_star_w",
        "di_verify_json",
        "typedef struct DiFamily DiFamily",
        "DI_STATUS_BUDGET_EXCEEDED = 5",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
