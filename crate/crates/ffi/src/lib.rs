//! C ABI for `branchiso`.
//!
//! Every fallible function returns a [`BiStatus`]; on failure the message is
//! available from [`bi_last_error`] on the same thread. Handles are opaque
//! and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use branchiso::invariants::{equisingular, invariant_set};
use branchiso::isotopy::{build_plan_with, verify_isotopy, PlanOptions, VerifyOptions};
use branchiso::resolution::{dual_graph, resolve, DualGraph, ResolutionData, DEFAULT_MAX_STEPS};
use branchiso::{implicitize, Branch, Error};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precision = 4,
    NotEquisingular = 5,
    Construction = 6,
    Numeric = 7,
    InvalidArgument = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// A parsed branch.
pub struct BiBranch {
    inner: Branch,
}

/// A resolved branch with its dual graph.
pub struct BiResolution {
    data: ResolutionData,
    graph: DualGraph,
}

/// Classical invariants of a branch.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BiInvariants {
    pub multiplicity: u32,
    pub delta: u64,
    pub milnor: u64,
}

/// Outcome of an isotopy check.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BiIsotopyResult {
    pub stages: usize,
    pub max_distance: f64,
    pub pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BiStatus {
    match e {
        Error::Syntax { .. } | Error::NonMonomialX | Error::NonPrimitive { .. } | Error::NotThroughOrigin => {
            BiStatus::Parse
        }
        Error::PrecisionExhausted(_) | Error::NotPowerSeries { .. } | Error::MaxSteps(_) => {
            BiStatus::Precision
        }
        Error::NotEquisingular(_) => BiStatus::NotEquisingular,
        Error::Construction(_) => BiStatus::Construction,
        Error::NonFinite | Error::LiftIllConditioned(_) => BiStatus::Numeric,
        _ => BiStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), BiStatus>) -> BiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BiStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            BiStatus::Panic
        }
    }
}

fn lift<T>(r: branchiso::Result<T>) -> Result<T, BiStatus> {
    r.map_err(|e| {
        let s = status_of(&e);
        set_error(e.to_string());
        s
    })
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, BiStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null pointer argument".into());
        BiStatus::NullPointer
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// call on the same thread.
#[no_mangle]
pub extern "C" fn bi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a branch in the `x = ...` / `y = ...` text format and declare it
/// exact up to `precision` (0 keeps the parsed precision).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_branch_parse(
    text: *const c_char,
    precision: u32,
    out: *mut *mut BiBranch,
) -> BiStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        let text = CStr::from_ptr(text).to_str().map_err(|_| {
            set_error("input is not valid UTF-8".into());
            BiStatus::InvalidUtf8
        })?;
        let b = lift(Branch::parse(text))?;
        let inner = if precision > 0 { b.extend_precision(precision) } else { b };
        *out = Box::into_raw(Box::new(BiBranch { inner }));
        Ok(())
    })
}

/// # Safety
/// `b` must come from [`bi_branch_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bi_branch_free(b: *mut BiBranch) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live branch handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_branch_resolve(b: *const BiBranch, out: *mut *mut BiResolution) -> BiStatus {
    guard(|| {
        let b = deref(b)?;
        if out.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        let data = lift(resolve(&b.inner, DEFAULT_MAX_STEPS))?;
        let graph = dual_graph(&data);
        *out = Box::into_raw(Box::new(BiResolution { data, graph }));
        Ok(())
    })
}

/// # Safety
/// `r` must come from [`bi_branch_resolve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bi_resolution_free(r: *mut BiResolution) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of blowups, or 0 for a NULL handle.
///
/// # Safety
/// `r` must be NULL or a live resolution handle.
#[no_mangle]
pub unsafe extern "C" fn bi_resolution_length(r: *const BiResolution) -> usize {
    r.as_ref().map_or(0, |r| r.data.r())
}

unsafe fn copy_out<T: Copy>(items: &[T], buf: *mut T, cap: usize, len: *mut usize) -> Result<(), BiStatus> {
    if len.is_null() {
        set_error("null pointer argument".into());
        return Err(BiStatus::NullPointer);
    }
    *len = items.len();
    if items.len() > cap {
        set_error(format!("buffer holds {cap} entries, {} needed", items.len()));
        return Err(BiStatus::BufferTooSmall);
    }
    if !items.is_empty() {
        if buf.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    }
    Ok(())
}

/// Copy the multiplicity sequence into `buf`; `*len` receives its length
/// even when the buffer is too small.
///
/// # Safety
/// `buf` must hold `cap` entries and `len` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_resolution_multiplicities(
    r: *const BiResolution,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> BiStatus {
    guard(|| copy_out(&deref(r)?.data.multiplicities(), buf, cap, len))
}

/// Copy the self-intersections of `E1..Er` into `buf`.
///
/// # Safety
/// As for [`bi_resolution_multiplicities`].
#[no_mangle]
pub unsafe extern "C" fn bi_resolution_weights(
    r: *const BiResolution,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> BiStatus {
    guard(|| copy_out(&deref(r)?.graph.weights(), buf, cap, len))
}

/// Dual graph in DOT format; release with [`bi_string_free`].
///
/// # Safety
/// `r` must be a live resolution handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_resolution_dot(r: *const BiResolution, out: *mut *mut c_char) -> BiStatus {
    guard(|| {
        let r = deref(r)?;
        if out.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        *out = to_c_string(r.graph.to_dot());
        Ok(())
    })
}

/// # Safety
/// `b` must be a live branch handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_branch_invariants(b: *const BiBranch, out: *mut BiInvariants) -> BiStatus {
    guard(|| {
        let b = deref(b)?;
        if out.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        let inv = lift(invariant_set(&b.inner))?;
        *out = BiInvariants {
            multiplicity: inv.char_exponents.n,
            delta: inv.delta,
            milnor: inv.milnor,
        };
        Ok(())
    })
}

/// Implicit equation as `f = ...`; release with [`bi_string_free`].
///
/// # Safety
/// `b` must be a live branch handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_branch_implicitize(b: *const BiBranch, out: *mut *mut c_char) -> BiStatus {
    guard(|| {
        let b = deref(b)?;
        if out.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        let f = lift(implicitize(&b.inner))?;
        *out = to_c_string(format!("f = {f}"));
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live branch handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_equisingular(a: *const BiBranch, b: *const BiBranch, out: *mut bool) -> BiStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        if out.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        *out = lift(equisingular(&a.inner, &b.inner))?.equal;
        Ok(())
    })
}

/// Build an isotopy from `a` to `b` and verify it on `samples` points of `a`
/// within `radius`, integrating with step `step`.
///
/// # Safety
/// `a`, `b` must be live branch handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bi_isotopy_verify(
    a: *const BiBranch,
    b: *const BiBranch,
    samples: usize,
    radius: f64,
    step: f64,
    tol: f64,
    out: *mut BiIsotopyResult,
) -> BiStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        if out.is_null() {
            set_error("null pointer argument".into());
            return Err(BiStatus::NullPointer);
        }
        let plan_opts = PlanOptions {
            working_radius: radius,
            ..PlanOptions::default()
        };
        let plan = lift(build_plan_with(&a.inner, &b.inner, &plan_opts))?;
        let opts = VerifyOptions {
            samples,
            radius,
            tol,
            step,
        };
        let report = lift(verify_isotopy(&a.inner, &b.inner, &plan, &opts))?;
        *out = BiIsotopyResult {
            stages: plan.stages.len(),
            max_distance: report.max_distance,
            pass: report.pass,
        };
        Ok(())
    })
}
