//! C interface: opaque context handles, plain status codes, and a
//! thread-local message for the last failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use silt::algebra::Algebra;
use silt::complex::is_presilting;
use silt::format::{parse_algebra, parse_complex, ComplexFile};
use silt::theorem::{theorem_report, BatteryOptions, SiltingContext};
use silt::{fixtures, Error, Field};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiltStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Internal = 5,
    Panic = 6,
}

/// Opaque handle: an algebra together with a parsed complex.
pub struct SiltContext {
    name: String,
    alg: Arc<Algebra>,
    complex: ComplexFile,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct SiltVerdict {
    pub two_term: bool,
    pub presilting: bool,
    pub silting: bool,
    pub tilting: bool,
    pub classes: usize,
    pub simples: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SiltStatus {
    match e {
        Error::Parse { .. } | Error::InvalidField(_) | Error::Io(_) => SiltStatus::Parse,
        Error::Internal(_) => SiltStatus::Internal,
        _ => SiltStatus::Precondition,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SiltStatus>) -> SiltStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SiltStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside silt");
            SiltStatus::Panic
        }
    }
}

fn lift<T>(r: silt::Result<T>) -> Result<T, SiltStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, SiltStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(SiltStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        SiltStatus::InvalidUtf8
    })
}

unsafe fn field_arg(p: *const c_char) -> Result<Option<Field>, SiltStatus> {
    if p.is_null() {
        return Ok(None);
    }
    Ok(Some(lift(Field::parse(str_arg(p)?))?))
}

unsafe fn ctx_arg<'a>(p: *const SiltContext) -> Result<&'a SiltContext, SiltStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null context");
        SiltStatus::NullArgument
    })
}

unsafe fn store<T>(out: *mut T, v: T) -> Result<(), SiltStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(SiltStatus::NullArgument);
    }
    out.write(v);
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn silt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a context from algebra and complex file contents. `field` may be
/// NULL (use the algebra's declared field) or a string such as "Q" or "101".
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn silt_context_new(
    algebra_text: *const c_char,
    complex_text: *const c_char,
    field: *const c_char,
    out: *mut *mut SiltContext,
) -> SiltStatus {
    guard(|| {
        let a = str_arg(algebra_text)?;
        let c = str_arg(complex_text)?;
        let field = field_arg(field)?;
        let alg = Arc::new(lift(lift(parse_algebra(a))?.build(field))?);
        let complex = lift(parse_complex(c, &alg))?;
        let ctx = SiltContext { name: complex.name.clone(), alg, complex };
        store(out, Box::into_raw(Box::new(ctx)))
    })
}

/// Builds a context from a bundled example by name.
///
/// # Safety
/// As for `silt_context_new`.
#[no_mangle]
pub unsafe extern "C" fn silt_context_from_fixture(
    name: *const c_char,
    field: *const c_char,
    out: *mut *mut SiltContext,
) -> SiltStatus {
    guard(|| {
        let name = str_arg(name)?;
        let field = field_arg(field)?;
        let (alg, complex) = lift(fixtures::load(name, field))?;
        let ctx = SiltContext { name: name.to_string(), alg, complex };
        store(out, Box::into_raw(Box::new(ctx)))
    })
}

/// # Safety
/// `ctx` must come from a constructor above and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn silt_context_free(ctx: *mut SiltContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Dimension of the algebra over its field.
///
/// # Safety
/// `ctx` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_dim(ctx: *const SiltContext, out: *mut usize) -> SiltStatus {
    guard(|| {
        let ctx = ctx_arg(ctx)?;
        store(out, ctx.alg.dim())
    })
}

/// # Safety
/// `ctx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn silt_check(ctx: *const SiltContext, out: *mut SiltVerdict) -> SiltStatus {
    guard(|| {
        let ctx = ctx_arg(ctx)?;
        let v = lift(is_presilting(&ctx.complex.total))?;
        store(
            out,
            SiltVerdict {
                two_term: v.two_term,
                presilting: v.presilting,
                silting: v.silting,
                tilting: v.tilting,
                classes: v.classes,
                simples: v.simples,
            },
        )
    })
}

/// Runs the theorem checks and returns the JSON report through `out`; free
/// it with `silt_string_free`. `passed` (may be NULL) receives whether no
/// check failed. Zero `max_dim`/`cap` select the defaults.
///
/// # Safety
/// `ctx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn silt_theorem_report(
    ctx: *const SiltContext,
    max_dim: usize,
    cap: usize,
    seed: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> SiltStatus {
    guard(|| {
        let ctx = ctx_arg(ctx)?;
        if out.is_null() {
            set_error("null output pointer");
            return Err(SiltStatus::NullArgument);
        }
        let mut opts = BatteryOptions { seed, ..Default::default() };
        if max_dim > 0 {
            opts.max_dim = max_dim;
        }
        if cap > 0 {
            opts.cap = cap;
        }
        let sc = lift(SiltingContext::new(&ctx.complex.summands))?;
        let report = lift(theorem_report(&sc, &ctx.name, &opts))?;
        if !passed.is_null() {
            passed.write(report.passed());
        }
        let s = CString::new(report.to_json()).map_err(|_| SiltStatus::Internal)?;
        store(out, s.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn silt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
