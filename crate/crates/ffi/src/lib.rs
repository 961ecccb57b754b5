//! C ABI over fuselab.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns a
//! [`FuselabStatus`] and leaves a message for [`fuselab_last_error`] on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use fuselab::io::{parse_document, Document};
use fuselab::nimrep::multiplicity_profile;
use fuselab::{catalog, Error, ModularData, NimRep};

/// Modular data handle.
pub struct FuselabModularData(Arc<ModularData>);

/// NIM-rep handle. Tied to the modular data it was built over.
pub struct FuselabNimRep {
    nimrep: NimRep,
    md: Arc<ModularData>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuselabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    Io = 5,
    /// A mathematical check failed (axiom, identity, NIM-rep, gauge).
    MathFailure = 6,
    SearchBudgetExceeded = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> FuselabStatus {
    match e {
        Error::InvalidArgument(_) | Error::ShapeMismatch(_) => FuselabStatus::InvalidArgument,
        Error::Parse(_) => FuselabStatus::Parse,
        Error::Io(_) => FuselabStatus::Io,
        Error::SearchBudgetExceeded(_) => FuselabStatus::SearchBudgetExceeded,
        _ => FuselabStatus::MathFailure,
    }
}

fn fail(status: FuselabStatus, msg: impl Into<String>) -> FuselabStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> FuselabStatus) -> FuselabStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(FuselabStatus::Panic, "internal panic"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, FuselabStatus> {
    if p.is_null() {
        return Err(fail(FuselabStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(FuselabStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

fn from_core<T>(r: fuselab::Result<T>) -> Result<T, FuselabStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> FuselabStatus {
    *out = Box::into_raw(Box::new(value));
    FuselabStatus::Ok
}

/// Looks up catalog modular data by id, e.g. `"su2:4"` or `"ising"`.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuselab_md_from_catalog(id: *const c_char, out: *mut *mut FuselabModularData) -> FuselabStatus {
    guard(|| {
        if out.is_null() {
            return fail(FuselabStatus::NullPointer, "out is null");
        }
        let id = tri!(str_arg(id, "id"));
        let md = tri!(from_core(catalog::lookup(id)));
        put(out, FuselabModularData(md))
    })
}

/// Parses a modular-data JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuselab_md_from_json(json: *const c_char, out: *mut *mut FuselabModularData) -> FuselabStatus {
    guard(|| {
        if out.is_null() {
            return fail(FuselabStatus::NullPointer, "out is null");
        }
        let text = tri!(str_arg(json, "json"));
        match tri!(from_core(parse_document(text))) {
            Document::ModularData(md) => put(out, FuselabModularData(Arc::new(md))),
            other => fail(
                FuselabStatus::InvalidArgument,
                format!("expected a modular-data document, got {}", other.kind()),
            ),
        }
    })
}

/// Number of simple objects, or 0 for a null handle.
///
/// # Safety
/// `md` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fuselab_md_rank(md: *const FuselabModularData) -> usize {
    md.as_ref().map_or(0, |m| m.0.rank())
}

/// # Safety
/// `md` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fuselab_md_free(md: *mut FuselabModularData) {
    if !md.is_null() {
        drop(Box::from_raw(md));
    }
}

/// Builds a NIM-rep from a graph spec (`"E:6"`, `"A:3+D:4"`) over su(2)
/// data, or the regular NIM-rep for `"regular"`.
///
/// # Safety
/// `md` must be a live handle, `spec` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fuselab_nimrep_from_graph(
    md: *const FuselabModularData,
    spec: *const c_char,
    out: *mut *mut FuselabNimRep,
) -> FuselabStatus {
    guard(|| {
        let (Some(md), false) = (md.as_ref(), out.is_null()) else {
            return fail(FuselabStatus::NullPointer, "md or out is null");
        };
        let spec = tri!(str_arg(spec, "spec"));
        let nimrep = tri!(from_core(fuselab::cli::nimrep_from_spec(&md.0, spec)));
        put(out, FuselabNimRep { nimrep, md: Arc::clone(&md.0) })
    })
}

/// Number of boundary labels, or 0 for a null handle.
///
/// # Safety
/// `nr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fuselab_nimrep_size(nr: *const FuselabNimRep) -> usize {
    nr.as_ref().map_or(0, |n| n.nimrep.labels().len())
}

/// # Safety
/// `nr` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fuselab_nimrep_free(nr: *mut FuselabNimRep) {
    if !nr.is_null() {
        drop(Box::from_raw(nr));
    }
}

/// Writes the multiplicity profile (one entry per simple object) into
/// `buf`. `*written` always receives the required length, so a call with
/// `len = 0` queries the size.
///
/// # Safety
/// `buf` must hold `len` values; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuselab_nimrep_profile(
    nr: *const FuselabNimRep,
    buf: *mut i64,
    len: usize,
    written: *mut usize,
) -> FuselabStatus {
    guard(|| {
        let (Some(nr), false) = (nr.as_ref(), written.is_null()) else {
            return fail(FuselabStatus::NullPointer, "nr or written is null");
        };
        let profile = tri!(from_core(multiplicity_profile(&nr.nimrep, &nr.md)));
        *written = profile.len();
        if len < profile.len() {
            return fail(FuselabStatus::BufferTooSmall, format!("profile needs {} entries", profile.len()));
        }
        if buf.is_null() {
            return fail(FuselabStatus::NullPointer, "buf is null");
        }
        ptr::copy_nonoverlapping(profile.as_ptr(), buf, profile.len());
        FuselabStatus::Ok
    })
}

/// Runs a CLI invocation (`argv` excludes the program name) and returns
/// the rendered report. The CLI exit code goes to `*exit_code`. Release
/// the result with [`fuselab_string_free`]. Returns null on bad arguments.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn fuselab_run(argv: *const *const c_char, argc: usize, exit_code: *mut i32) -> *mut c_char {
    let mut result = ptr::null_mut();
    let status = guard(|| {
        if exit_code.is_null() || (argv.is_null() && argc > 0) {
            return fail(FuselabStatus::NullPointer, "argv or exit_code is null");
        }
        let mut args = vec!["fuselab".to_owned()];
        for k in 0..argc {
            args.push(tri!(str_arg(*argv.add(k), "argv entry")).to_owned());
        }
        let (code, text) = fuselab::cli::run_args(args);
        *exit_code = code;
        result = CString::new(text.replace('\0', " ")).expect("no NUL").into_raw();
        FuselabStatus::Ok
    });
    if status != FuselabStatus::Ok {
        return ptr::null_mut();
    }
    result
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fuselab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn fuselab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
