//! C ABI over the `pbwbasis` library.
//!
//! Conventions:
//!
//! * a root system is an opaque handle created with [`pbw_system_new`] and
//!   released with [`pbw_system_free`];
//! * every fallible call returns a [`PbwStatus`]; on failure a thread-local
//!   message is readable through [`pbw_last_error`];
//! * results are UTF-8 JSON strings (same schemas as the CLI `--format
//!   json` output), owned by the caller and released with
//!   [`pbw_string_free`].
//!
//! The header `include/pbwbasis.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::str::FromStr;

use pbwbasis::cli::{
    character_body, parse_exponent_spec, paths_body, points_body, roots_body, straighten_body,
};
use pbwbasis::oracle::suites::{run_suite, SuiteOptions};
use pbwbasis::polytope::DominantWeight;
use pbwbasis::rootsys::{Family, RootSystem};
use pbwbasis::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbwStatus {
    /// Success.
    Ok = 0,
    /// Malformed input (family, rank, weight, exponent, suite name).
    InvalidArgument = 1,
    /// A verification suite ran and reported failures.
    VerificationFailed = 2,
    /// The requested module exceeds the dimension cap.
    CapExceeded = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
}

/// Opaque root-system handle.
pub struct PbwSystem {
    sys: RootSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(cleaned).unwrap());
}

fn status_of(err: &Error) -> PbwStatus {
    match err {
        Error::CapExceeded { .. } => PbwStatus::CapExceeded,
        _ => PbwStatus::InvalidArgument,
    }
}

/// Message of the most recent failure on this thread.  Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn pbw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by any `*_json` call.
#[no_mangle]
pub extern "C" fn pbw_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe {
            drop(CString::from_raw(s));
        }
    }
}

/// Creates a root system of the given family (`'A'` or `'C'`) and rank.
///
/// # Safety
/// `out` must be a valid pointer; the handle must be released with
/// [`pbw_system_free`].
#[no_mangle]
pub unsafe extern "C" fn pbw_system_new(
    family: c_char,
    rank: u32,
    out: *mut *mut PbwSystem,
) -> PbwStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return PbwStatus::NullPointer;
    }
    let family = match family as u8 {
        b'A' | b'a' => Family::A,
        b'C' | b'c' => Family::C,
        other => {
            set_error(&format!("unknown family byte {other} (expected 'A' or 'C')"));
            return PbwStatus::InvalidArgument;
        }
    };
    match RootSystem::new(family, rank) {
        Ok(sys) => {
            unsafe { *out = Box::into_raw(Box::new(PbwSystem { sys })) };
            PbwStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Releases a handle created by [`pbw_system_new`].
///
/// # Safety
/// `sys` must come from [`pbw_system_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pbw_system_free(sys: *mut PbwSystem) {
    if !sys.is_null() {
        unsafe {
            drop(Box::from_raw(sys));
        }
    }
}

unsafe fn deref_sys<'a>(sys: *const PbwSystem) -> Result<&'a RootSystem, PbwStatus> {
    if sys.is_null() {
        set_error("system handle is null");
        return Err(PbwStatus::NullPointer);
    }
    Ok(unsafe { &(*sys).sys })
}

fn emit(out: *mut *mut c_char, value: serde_json::Value) -> PbwStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return PbwStatus::NullPointer;
    }
    let text = serde_json::to_string_pretty(&value).unwrap();
    let cstr = CString::new(text).unwrap();
    unsafe { *out = cstr.into_raw() };
    PbwStatus::Ok
}

unsafe fn weight_from_raw(
    sys: &RootSystem,
    weight: *const u32,
    weight_len: usize,
) -> Result<DominantWeight, PbwStatus> {
    if weight.is_null() && weight_len > 0 {
        set_error("weight pointer is null");
        return Err(PbwStatus::NullPointer);
    }
    let coeffs = if weight_len == 0 {
        Vec::new()
    } else {
        unsafe { std::slice::from_raw_parts(weight, weight_len) }.to_vec()
    };
    let w = DominantWeight(coeffs);
    if let Err(e) = w.validate(sys) {
        set_error(&e.to_string());
        return Err(status_of(&e));
    }
    Ok(w)
}

/// Positive roots in canonical order, as a JSON array.
///
/// # Safety
/// `sys` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pbw_roots_json(
    sys: *const PbwSystem,
    out_json: *mut *mut c_char,
) -> PbwStatus {
    let sys = match unsafe { deref_sys(sys) } {
        Ok(s) => s,
        Err(st) => return st,
    };
    emit(out_json, roots_body(sys))
}

/// All Dyck paths, as a JSON array of root arrays.
///
/// # Safety
/// `sys` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pbw_paths_json(
    sys: *const PbwSystem,
    out_json: *mut *mut c_char,
) -> PbwStatus {
    let sys = match unsafe { deref_sys(sys) } {
        Ok(s) => s,
        Err(st) => return st,
    };
    emit(out_json, paths_body(sys))
}

macro_rules! try_capi {
    ($expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(st) => return st,
        }
    };
}

/// Lattice points of the polytope of a dominant weight.
///
/// # Safety
/// `sys` must be a live handle, `weight` must point to `weight_len`
/// entries, and `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pbw_points_json(
    sys: *const PbwSystem,
    weight: *const u32,
    weight_len: usize,
    out_json: *mut *mut c_char,
) -> PbwStatus {
    let sys = try_capi!(unsafe { deref_sys(sys) });
    let lam = try_capi!(unsafe { weight_from_raw(sys, weight, weight_len) });
    match points_body(sys, &lam) {
        Ok(v) => emit(out_json, v),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Graded character of a dominant weight.
///
/// # Safety
/// Same contract as [`pbw_points_json`].
#[no_mangle]
pub unsafe extern "C" fn pbw_character_json(
    sys: *const PbwSystem,
    weight: *const u32,
    weight_len: usize,
    out_json: *mut *mut c_char,
) -> PbwStatus {
    let sys = try_capi!(unsafe { deref_sys(sys) });
    let lam = try_capi!(unsafe { weight_from_raw(sys, weight, weight_len) });
    match character_body(sys, &lam) {
        Ok(v) => emit(out_json, v),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Rewrites a divided-power monomial over the basis.  `exponent` uses the
/// assignment syntax of the CLI, e.g. `"a[1,2]=2,a[2,2]=1"`.
///
/// # Safety
/// `exponent` must be a NUL-terminated UTF-8 string; the rest as in
/// [`pbw_points_json`].
#[no_mangle]
pub unsafe extern "C" fn pbw_straighten_json(
    sys: *const PbwSystem,
    weight: *const u32,
    weight_len: usize,
    exponent: *const c_char,
    out_json: *mut *mut c_char,
) -> PbwStatus {
    let sys = try_capi!(unsafe { deref_sys(sys) });
    let lam = try_capi!(unsafe { weight_from_raw(sys, weight, weight_len) });
    if exponent.is_null() {
        set_error("exponent string is null");
        return PbwStatus::NullPointer;
    }
    let spec = match unsafe { CStr::from_ptr(exponent) }.to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("exponent string is not valid UTF-8");
            return PbwStatus::InvalidArgument;
        }
    };
    let exp = match parse_exponent_spec(sys, spec) {
        Ok(e) => e,
        Err(e) => {
            set_error(&e.to_string());
            return status_of(&e);
        }
    };
    match straighten_body(sys, &lam, &exp) {
        Ok(v) => emit(out_json, v),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Runs a verification suite (`dims`, `table1`, `basis`, `straighten`,
/// `minkowski`).  `family` may be null (both families); `max_rank` and
/// `max_coeff` use the suite defaults when negative, as does `seed`.
/// Returns `VerificationFailed` when the suite ran but a case failed; the
/// JSON report is produced either way.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `family` null or the same;
/// `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn pbw_verify_json(
    suite: *const c_char,
    family: *const c_char,
    max_rank: i32,
    max_coeff: i32,
    seed: i64,
    out_json: *mut *mut c_char,
) -> PbwStatus {
    if suite.is_null() {
        set_error("suite name is null");
        return PbwStatus::NullPointer;
    }
    let suite = match unsafe { CStr::from_ptr(suite) }.to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("suite name is not valid UTF-8");
            return PbwStatus::InvalidArgument;
        }
    };
    let family = if family.is_null() {
        None
    } else {
        match unsafe { CStr::from_ptr(family) }.to_str().map_err(|_| ()).and_then(|s| {
            Family::from_str(s).map_err(|_| ())
        }) {
            Ok(f) => Some(f),
            Err(()) => {
                set_error("family must be \"A\" or \"C\"");
                return PbwStatus::InvalidArgument;
            }
        }
    };
    let opts = SuiteOptions {
        family,
        max_rank: u32::try_from(max_rank).ok(),
        max_coeff: u32::try_from(max_coeff).ok(),
        seed: u64::try_from(seed).ok(),
    };
    match run_suite(suite, &opts) {
        Ok(report) => {
            let passed = report.passed;
            let st = emit(out_json, serde_json::to_value(&report).unwrap());
            if st != PbwStatus::Ok {
                return st;
            }
            if passed {
                PbwStatus::Ok
            } else {
                set_error("one or more verification cases failed");
                PbwStatus::VerificationFailed
            }
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}
