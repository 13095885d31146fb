//! C interface to `approx-codec`.
//!
//! Handles are opaque pointers owned by the caller and released with the
//! matching `*_free` function. Strings returned through `char **` are
//! NUL-terminated JSON and must be released with `apx_string_free`. Every
//! fallible call returns an `ApxStatus`; on failure `apx_last_error` gives
//! the message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use approx_codec::codec::{self, EncodedParameter, EncodedParameterJson, TupleSet, TupleSetJson};
use approx_codec::engine::best_both;
use approx_codec::numeric::{parse_rational, LinearForm, ParamReal};
use approx_codec::systems::{self, ApproximationSystem, Limits, SystemDescriptor};
use approx_codec::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    DuplicateTuple = 5,
    PrecisionCapExceeded = 6,
    SearchCapExceeded = 7,
    DepthExhausted = 8,
    EmptyWitness = 9,
    PropertyViolation = 10,
    InvalidChain = 11,
    Internal = 12,
    Panic = 13,
}

impl From<&Error> for ApxStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => ApxStatus::Parse,
            Error::InvalidInput(_) | Error::InvalidBasis(_) | Error::BasisMismatch | Error::EmptyGap => {
                ApxStatus::InvalidInput
            }
            Error::DuplicateTuple(_) => ApxStatus::DuplicateTuple,
            Error::PrecisionCapExceeded { .. } => ApxStatus::PrecisionCapExceeded,
            Error::SearchCapExceeded { .. } => ApxStatus::SearchCapExceeded,
            Error::DepthExhausted(_) => ApxStatus::DepthExhausted,
            Error::EmptyWitness(_) => ApxStatus::EmptyWitness,
            Error::PropertyViolation(_) => ApxStatus::PropertyViolation,
            Error::InvalidChain(_) => ApxStatus::InvalidChain,
            Error::Io(_) => ApxStatus::Internal,
        }
    }
}

/// An approximation system built from a JSON descriptor.
pub struct ApxSystem {
    sys: Arc<dyn ApproximationSystem>,
}

/// An encoded parameter together with the system it belongs to.
pub struct ApxParameter {
    sys: Arc<dyn ApproximationSystem>,
    param: EncodedParameter,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(ApxStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(ApxStatus::Parse, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ApxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ApxStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside approx-codec");
            ApxStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(ApxStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ApxStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn limits_arg(p: *const c_char) -> Result<Limits, Failure> {
    if p.is_null() {
        return Ok(Limits::default());
    }
    let limits: Limits = serde_json::from_str(text(p, "limits")?)?;
    limits.validate()?;
    Ok(limits)
}

fn out_check<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(ApxStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(ApxStatus::Internal, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Builds a system from its JSON descriptor. `limits_json` may be null for
/// the default caps.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn apx_system_new(
    descriptor_json: *const c_char,
    limits_json: *const c_char,
    out: *mut *mut ApxSystem,
) -> ApxStatus {
    guard(|| {
        out_check(out)?;
        let desc: SystemDescriptor = serde_json::from_str(text(descriptor_json, "descriptor")?)?;
        let sys = systems::build(&desc, limits_arg(limits_json)?)?;
        *out = Box::into_raw(Box::new(ApxSystem { sys }));
        Ok(())
    })
}

/// # Safety
/// `sys` must come from `apx_system_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn apx_system_free(sys: *mut ApxSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Encodes a tuple set given as `{"m": .., "tuples": [[..], ..]}`.
///
/// # Safety
/// `sys` must be a live handle; `tuples_json` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn apx_encode(
    sys: *const ApxSystem,
    tuples_json: *const c_char,
    out: *mut *mut ApxParameter,
) -> ApxStatus {
    guard(|| {
        out_check(out)?;
        let sys = sys
            .as_ref()
            .ok_or_else(|| Failure(ApxStatus::NullPointer, "system is null".into()))?;
        let j: TupleSetJson = serde_json::from_str(text(tuples_json, "tuples")?)?;
        let set = TupleSet::from_json(&j)?;
        let param = codec::encode(sys.sys.as_ref(), &set)?;
        *out = Box::into_raw(Box::new(ApxParameter {
            sys: sys.sys.clone(),
            param,
        }));
        Ok(())
    })
}

/// Reads an encoded parameter, building and checking its system.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn apx_parameter_from_json(
    json: *const c_char,
    limits_json: *const c_char,
    out: *mut *mut ApxParameter,
) -> ApxStatus {
    guard(|| {
        out_check(out)?;
        let j: EncodedParameterJson = serde_json::from_str(text(json, "parameter")?)?;
        let (sys, param) = EncodedParameter::from_json(&j, limits_arg(limits_json)?)?;
        *out = Box::into_raw(Box::new(ApxParameter { sys, param }));
        Ok(())
    })
}

/// # Safety
/// `param` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn apx_parameter_to_json(
    param: *const ApxParameter,
    out: *mut *mut c_char,
) -> ApxStatus {
    guard(|| {
        out_check(out)?;
        let p = param
            .as_ref()
            .ok_or_else(|| Failure(ApxStatus::NullPointer, "parameter is null".into()))?;
        give_string(out, serde_json::to_string(&p.param.to_json())?)
    })
}

/// Last depth of the construction, or 0 for a null handle.
///
/// # Safety
/// `param` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn apx_parameter_final_depth(param: *const ApxParameter) -> u64 {
    param.as_ref().map_or(0, |p| p.param.final_depth)
}

/// Decodes `count` tuples into a tuple-set JSON string.
///
/// # Safety
/// `param` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn apx_decode(
    param: *const ApxParameter,
    count: usize,
    out: *mut *mut c_char,
) -> ApxStatus {
    guard(|| {
        out_check(out)?;
        let p = param
            .as_ref()
            .ok_or_else(|| Failure(ApxStatus::NullPointer, "parameter is null".into()))?;
        let set = codec::decode(p.sys.as_ref(), &p.param, count)?;
        give_string(out, serde_json::to_string(&set.to_json())?)
    })
}

/// # Safety
/// `param` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn apx_parameter_free(param: *mut ApxParameter) {
    if !param.is_null() {
        drop(Box::from_raw(param));
    }
}

/// `{"L": [..], "R": [..]}` for the rational `c` (written `p/q`) up to
/// `depth`.
///
/// # Safety
/// `sys` must be a live handle, `c` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn apx_best_approx(
    sys: *const ApxSystem,
    c: *const c_char,
    depth: u64,
    out: *mut *mut c_char,
) -> ApxStatus {
    guard(|| {
        out_check(out)?;
        let sys = sys
            .as_ref()
            .ok_or_else(|| Failure(ApxStatus::NullPointer, "system is null".into()))?;
        let q = parse_rational(text(c, "c")?)?;
        let c = ParamReal::Exact(LinearForm::rational(sys.sys.basis(), q));
        let (l, r) = best_both(sys.sys.as_ref(), &c, depth)?;
        give_string(out, serde_json::json!({ "L": l, "R": r }).to_string())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn apx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn apx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
