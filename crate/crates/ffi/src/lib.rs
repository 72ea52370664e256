//! C ABI for `twisted-degree`.
//!
//! Every fallible call returns a [`TdStatus`] code and writes its result through an out pointer.
//! Strings handed out are NUL-terminated JSON owned by the caller and released with
//! [`td_string_free`]; the message of the last failure on the calling thread is available from
//! [`td_last_error`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use twisted_degree::degree::DegreeEngine;
use twisted_degree::disk::{example_report, ExampleParams, Preset};
use twisted_degree::group::GroupSpec;
use twisted_degree::o2::enumerate_mode_classes;
use twisted_degree::report::envelope;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Computation = 4,
    Panic = 5,
}

/// Opaque handle to a finite group with its subgroup lattice, irreducibles and degree caches.
pub struct TdEngine {
    inner: DegreeEngine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).ok();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard<F: FnOnce() -> Result<(), (TdStatus, String)>>(f: F) -> TdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TdStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            TdStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TdStatus, String)> {
    if p.is_null() {
        return Err((TdStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TdStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn computation(e: twisted_degree::Error) -> (TdStatus, String) {
    let status = match e {
        twisted_degree::Error::InvalidArgument(_)
        | twisted_degree::Error::BadSpec(_)
        | twisted_degree::Error::UnknownClass(_)
        | twisted_degree::Error::Parse(_) => TdStatus::InvalidArgument,
        _ => TdStatus::Computation,
    };
    (status, e.to_string())
}

fn json_out(
    command: &str,
    v: &impl serde::Serialize,
    out: *mut *mut c_char,
) -> Result<(), (TdStatus, String)> {
    let doc = envelope(command, v).map_err(computation)?;
    let s = CString::new(serde_json::to_string(&doc).expect("values serialize"))
        .map_err(|_| (TdStatus::Computation, "NUL in output".to_string()))?;
    unsafe { *out = s.into_raw() };
    Ok(())
}

/// Build an engine from a group name (`d4xz2`) or a JSON group description.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn td_engine_new(spec: *const c_char, out: *mut *mut TdEngine) -> TdStatus {
    guard(|| {
        if out.is_null() {
            return Err((TdStatus::NullArgument, "out is null".into()));
        }
        let spec = read_str(spec, "spec")?;
        let g = GroupSpec::parse(spec)
            .and_then(|s| s.build())
            .map_err(computation)?;
        let inner = DegreeEngine::new(&g).map_err(computation)?;
        *out = Box::into_raw(Box::new(TdEngine { inner }));
        Ok(())
    })
}

/// Release an engine. Null is ignored.
///
/// # Safety
/// `engine` must come from [`td_engine_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn td_engine_free(engine: *mut TdEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of conjugacy classes of subgroups.
///
/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_engine_class_count(
    engine: *const TdEngine,
    out: *mut usize,
) -> TdStatus {
    guard(|| {
        let e = engine
            .as_ref()
            .ok_or((TdStatus::NullArgument, "engine is null".to_string()))?;
        if out.is_null() {
            return Err((TdStatus::NullArgument, "out is null".into()));
        }
        *out = e.inner.lattice().len();
        Ok(())
    })
}

/// Basic degree of `V_{fold, irrep}` as JSON terms.
///
/// # Safety
/// `engine` must be a live handle, `irrep` a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_basic_degree_json(
    engine: *const TdEngine,
    irrep: *const c_char,
    fold: u32,
    out: *mut *mut c_char,
) -> TdStatus {
    guard(|| {
        let e = engine
            .as_ref()
            .ok_or((TdStatus::NullArgument, "engine is null".to_string()))?;
        let irrep = read_str(irrep, "irrep")?;
        if out.is_null() {
            return Err((TdStatus::NullArgument, "out is null".into()));
        }
        let j = e.inner.irrep_index(irrep).map_err(computation)?;
        let d = e.inner.basic(fold, j).map_err(computation)?;
        json_out("basic-degree", &d, out)
    })
}

/// Number of conjugacy classes of `O(2) x Gamma x S^1` in circle mode `mode`.
///
/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_mode_class_count(
    engine: *const TdEngine,
    mode: u32,
    out: *mut usize,
) -> TdStatus {
    guard(|| {
        let e = engine
            .as_ref()
            .ok_or((TdStatus::NullArgument, "engine is null".to_string()))?;
        if out.is_null() {
            return Err((TdStatus::NullArgument, "out is null".into()));
        }
        *out = enumerate_mode_classes(e.inner.lattice(), mode as usize)
            .map_err(computation)?
            .len();
        Ok(())
    })
}

/// Full report of a disk preset (`single` or `coupled`) with its default parameters.
///
/// # Safety
/// `preset` must be a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_disk_example_json(
    preset: *const c_char,
    out: *mut *mut c_char,
) -> TdStatus {
    guard(|| {
        let preset: Preset = read_str(preset, "preset")?.parse().map_err(computation)?;
        if out.is_null() {
            return Err((TdStatus::NullArgument, "out is null".into()));
        }
        let r = example_report(preset, &ExampleParams::preset(preset)).map_err(computation)?;
        json_out("disk-example", &r, out)
    })
}

/// Message of the last failure on this thread, or null. Free with [`td_string_free`].
#[no_mangle]
pub extern "C" fn td_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .clone()
            .map_or(std::ptr::null_mut(), CString::into_raw)
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn td_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
