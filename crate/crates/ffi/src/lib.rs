//! C ABI over the `dinterval` solvers.
//!
//! Families are opaque `DiFamily` handles. Every function returns a
//! `DiStatus`; on failure `di_last_error` describes the problem. Strings
//! returned through out-parameters must be released with `di_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dinterval::bounds::verify_bounds;
use dinterval::exact::{chi_e, nu_w, tau_w};
use dinterval::generators::gen_walecki;
use dinterval::lp::tau_star_w;
use dinterval::rational::to_pq;
use dinterval::{Instance, SearchBudget, SolveError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInstance = 3,
    InvalidArgument = 4,
    BudgetExceeded = 5,
    SolverError = 6,
    Panic = 7,
}

/// Opaque handle to a validated instance (family plus optional weights).
pub struct DiFamily {
    instance: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: DiStatus, msg: impl AsRef<str>) -> DiStatus {
    set_error(msg.as_ref());
    status
}

fn from_solve(e: SolveError) -> DiStatus {
    let status = match e {
        SolveError::BudgetExceeded { .. } => DiStatus::BudgetExceeded,
        SolveError::Invalid(_) => DiStatus::InvalidInstance,
        SolveError::Precondition(_) => DiStatus::InvalidArgument,
        _ => DiStatus::SolverError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> DiStatus) -> DiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == DiStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(DiStatus::Panic, "internal panic"),
    }
}

fn budget(max_nodes: u64) -> SearchBudget {
    if max_nodes == 0 {
        SearchBudget::default()
    } else {
        SearchBudget::with_max_nodes(max_nodes)
    }
}

unsafe fn family<'a>(f: *const DiFamily) -> Result<&'a DiFamily, DiStatus> {
    f.as_ref().ok_or_else(|| fail(DiStatus::NullPointer, "null family handle"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> DiStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DiStatus::Ok
        }
        Err(_) => fail(DiStatus::SolverError, "output contains a NUL byte"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the most recent failure on this thread (empty after a
/// success). Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn di_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates instance JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn di_family_from_json(json: *const c_char, out: *mut *mut DiFamily) -> DiStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(DiStatus::NullPointer, "null argument");
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(e) => return fail(DiStatus::InvalidUtf8, e.to_string()),
        };
        match Instance::from_json(text) {
            Ok(instance) => {
                *out = Box::into_raw(Box::new(DiFamily { instance }));
                DiStatus::Ok
            }
            Err(e) => fail(DiStatus::InvalidInstance, e.to_string()),
        }
    })
}

/// Walecki family for `d >= 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn di_gen_walecki(d: usize, out: *mut *mut DiFamily) -> DiStatus {
    guard(|| {
        if out.is_null() {
            return fail(DiStatus::NullPointer, "null argument");
        }
        match gen_walecki(d) {
            Ok(h) => {
                *out = Box::into_raw(Box::new(DiFamily { instance: Instance::unweighted(h) }));
                DiStatus::Ok
            }
            Err(e) => fail(DiStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn di_family_free(f: *mut DiFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn di_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Canonical instance JSON.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn di_family_to_json(f: *const DiFamily, out: *mut *mut c_char) -> DiStatus {
    guard(|| {
        let f = try_status!(family(f));
        if out.is_null() {
            return fail(DiStatus::NullPointer, "null argument");
        }
        write_string(out, f.instance.to_json())
    })
}

/// Number of edges.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn di_family_edge_count(f: *const DiFamily, out: *mut usize) -> DiStatus {
    guard(|| {
        let f = try_status!(family(f));
        if out.is_null() {
            return fail(DiStatus::NullPointer, "null argument");
        }
        *out = f.instance.family.len();
        DiStatus::Ok
    })
}

unsafe fn integral(
    f: *const DiFamily,
    out: *mut u64,
    solve: impl FnOnce(&Instance) -> Result<u64, SolveError>,
) -> DiStatus {
    guard(|| {
        let f = try_status!(family(f));
        if out.is_null() {
            return fail(DiStatus::NullPointer, "null argument");
        }
        match solve(&f.instance) {
            Ok(v) => {
                *out = v;
                DiStatus::Ok
            }
            Err(e) => from_solve(e),
        }
    })
}

/// Weighted matching number. `max_nodes == 0` uses the default budget.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn di_nu_w(f: *const DiFamily, max_nodes: u64, out: *mut u64) -> DiStatus {
    integral(f, out, |i| nu_w(&i.family, &i.weights_or_unit(), &budget(max_nodes)).map(|r| r.0))
}

/// Weighted cover number.
///
/// # Safety
/// As `di_nu_w`.
#[no_mangle]
pub unsafe extern "C" fn di_tau_w(f: *const DiFamily, max_nodes: u64, out: *mut u64) -> DiStatus {
    integral(f, out, |i| tau_w(&i.family, &i.weights_or_unit(), &budget(max_nodes)).map(|r| r.0))
}

/// Edge chromatic number.
///
/// # Safety
/// As `di_nu_w`.
#[no_mangle]
pub unsafe extern "C" fn di_chi_e(f: *const DiFamily, max_nodes: u64, out: *mut u64) -> DiStatus {
    integral(f, out, |i| chi_e(&i.family, &budget(max_nodes)).map(|c| c.colors as u64))
}

/// Fractional weighted cover number as a `"p/q"` string.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn di_tau_star_w(f: *const DiFamily, out: *mut *mut c_char) -> DiStatus {
    guard(|| {
        let f = try_status!(family(f));
        if out.is_null() {
            return fail(DiStatus::NullPointer, "null argument");
        }
        match tau_star_w(&f.instance.family, &f.instance.weights_or_unit()) {
            Ok(s) => write_string(out, to_pq(&s.value)),
            Err(e) => from_solve(e),
        }
    })
}

/// Bound report as JSON. `theorems_hold` (optional) receives whether every
/// theorem row holds.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable; `theorems_hold` may
/// be null.
#[no_mangle]
pub unsafe extern "C" fn di_verify_json(
    f: *const DiFamily,
    max_nodes: u64,
    out: *mut *mut c_char,
    theorems_hold: *mut bool,
) -> DiStatus {
    guard(|| {
        let f = try_status!(family(f));
        if out.is_null() {
            return fail(DiStatus::NullPointer, "null argument");
        }
        let report = verify_bounds(&f.instance, &budget(max_nodes));
        if !theorems_hold.is_null() {
            *theorems_hold = report.theorems_hold();
        }
        let json = serde_json::to_string(&report).expect("report serializes");
        write_string(out, json)
    })
}
