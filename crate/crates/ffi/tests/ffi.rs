use std::ffi::{c_char, CStr, CString};
use std::ptr;

use approx_codec_ffi::*;

const KRON: &str = r#"{"kind":"kronecker","alpha":{"kind":"sqrt","radicand":2},"beta":{"kind":"sqrt","radicand":3}}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    apx_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(apx_last_error()).to_str().unwrap().to_owned()
}

unsafe fn system() -> *mut ApxSystem {
    let mut sys = ptr::null_mut();
    assert_eq!(apx_system_new(c(KRON).as_ptr(), ptr::null(), &mut sys), ApxStatus::Ok);
    assert!(!sys.is_null());
    sys
}

#[test]
fn encode_decode_through_handles() {
    unsafe {
        let sys = system();
        let mut param = ptr::null_mut();
        let tuples = c(r#"{"m":"1","tuples":[["1"],["3"]]}"#);
        assert_eq!(apx_encode(sys, tuples.as_ptr(), &mut param), ApxStatus::Ok);
        assert_eq!(apx_parameter_final_depth(param), 18916);

        let mut text = ptr::null_mut();
        assert_eq!(apx_decode(param, 2, &mut text), ApxStatus::Ok);
        assert_eq!(take(text), r#"{"m":"1","tuples":[["1"],["3"]]}"#);

        let mut json = ptr::null_mut();
        assert_eq!(apx_parameter_to_json(param, &mut json), ApxStatus::Ok);
        let json = CString::new(take(json)).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(apx_parameter_from_json(json.as_ptr(), ptr::null(), &mut again), ApxStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(apx_decode(again, 1, &mut text), ApxStatus::Ok);
        assert_eq!(take(text), r#"{"m":"1","tuples":[["1"]]}"#);

        apx_parameter_free(again);
        apx_parameter_free(param);
        apx_system_free(sys);
    }
}

#[test]
fn best_approx_example() {
    unsafe {
        let sys = system();
        let mut out = ptr::null_mut();
        assert_eq!(apx_best_approx(sys, c("1/2").as_ptr(), 7, &mut out), ApxStatus::Ok);
        assert_eq!(take(out), r#"{"L":[2],"R":[1,4]}"#);
        apx_system_free(sys);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let sys = system();
        let mut param = ptr::null_mut();
        let dup = c(r#"{"m":1,"tuples":[[2],[2]]}"#);
        assert_eq!(apx_encode(sys, dup.as_ptr(), &mut param), ApxStatus::DuplicateTuple);
        assert!(param.is_null());
        assert!(last_error().contains("duplicate tuple"));

        let bad = c("{not json");
        assert_eq!(apx_encode(sys, bad.as_ptr(), &mut param), ApxStatus::Parse);
        assert_eq!(apx_encode(ptr::null(), dup.as_ptr(), &mut param), ApxStatus::NullPointer);
        assert_eq!(apx_encode(sys, dup.as_ptr(), ptr::null_mut()), ApxStatus::NullPointer);

        let mut out = ptr::null_mut();
        assert_eq!(apx_best_approx(sys, c("0.5").as_ptr(), 7, &mut out), ApxStatus::Parse);
        let tight = c(r#"{"depth_cap":3}"#);
        let mut small = ptr::null_mut();
        assert_eq!(apx_system_new(c(KRON).as_ptr(), tight.as_ptr(), &mut small), ApxStatus::Ok);
        let one = c(r#"{"m":1,"tuples":[[1]]}"#);
        assert_eq!(apx_encode(small, one.as_ptr(), &mut param), ApxStatus::DepthExhausted);

        let corrupt = c(r#"{"system":{"kind":"sine"},"m":"1","n_tuples":"1","final_depth":"5","chains":[],"brackets":[]}"#);
        assert_eq!(apx_parameter_from_json(corrupt.as_ptr(), ptr::null(), &mut param), ApxStatus::Parse);

        let mut ok = ptr::null_mut();
        assert_eq!(apx_best_approx(sys, c("1/2").as_ptr(), 3, &mut ok), ApxStatus::Ok);
        apx_string_free(ok);
        assert_eq!(last_error(), "");

        apx_system_free(small);
        apx_system_free(sys);
        apx_system_free(ptr::null_mut());
        apx_parameter_free(ptr::null_mut());
        apx_string_free(ptr::null_mut());
        assert_eq!(apx_parameter_final_depth(ptr::null()), 0);
    }
}

#[test]
fn header_matches_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/approx_codec.h")).unwrap();
    for name in [
        "apx_system_new",
        "apx_system_free",
        "apx_encode",
        "apx_decode",
        "apx_parameter_from_json",
        "apx_parameter_to_json",
        "apx_parameter_final_depth",
        "apx_parameter_free",
        "apx_best_approx",
        "apx_string_free",
        "apx_last_error",
        "typedef struct ApxSystem ApxSystem",
        "typedef struct ApxParameter ApxParameter",
        "APX_STATUS_DEPTH_EXHAUSTED = 8",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
