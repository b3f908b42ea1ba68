use std::ffi::{CStr, CString};
use std::ptr;

use silt_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

const A2_ALG: &str = include_str!("../../core/fixtures/a2_tilt.alg");
const A2_CPX: &str = include_str!("../../core/fixtures/a2_tilt.cpx");

#[test]
fn fixture_context_check() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(silt_context_from_fixture(cs("a3_silt").as_ptr(), ptr::null(), &mut ctx), SiltStatus::Ok);
        let mut v = SiltVerdict::default();
        assert_eq!(silt_check(ctx, &mut v), SiltStatus::Ok);
        assert!(v.two_term && v.presilting && v.silting && !v.tilting);
        assert_eq!((v.classes, v.simples), (3, 3));
        silt_context_free(ctx);
    }
}

#[test]
fn text_context_and_report() {
    unsafe {
        let mut ctx = ptr::null_mut();
        let st = silt_context_new(cs(A2_ALG).as_ptr(), cs(A2_CPX).as_ptr(), cs("Q").as_ptr(), &mut ctx);
        assert_eq!(st, SiltStatus::Ok);
        let mut dim = 0;
        assert_eq!(silt_algebra_dim(ctx, &mut dim), SiltStatus::Ok);
        assert_eq!(dim, 3);
        let mut json = ptr::null_mut();
        let mut passed = false;
        assert_eq!(silt_theorem_report(ctx, 0, 0, 3, &mut json, &mut passed), SiltStatus::Ok);
        assert!(passed);
        let s = CStr::from_ptr(json).to_str().unwrap();
        assert!(s.contains("\"field\": \"Q\""));
        assert!(s.contains("phi.surjective"));
        silt_string_free(json);
        silt_context_free(ctx);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(silt_context_new(ptr::null(), ptr::null(), ptr::null(), &mut ctx), SiltStatus::NullArgument);
        let st = silt_context_new(cs("vertices 2\narrow x 1 2\nrelation x\n").as_ptr(), cs(A2_CPX).as_ptr(), ptr::null(), &mut ctx);
        assert_eq!(st, SiltStatus::Parse);
        let msg = CStr::from_ptr(silt_last_error()).to_str().unwrap();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(ctx.is_null());
        assert_eq!(silt_context_from_fixture(cs("a2_tilt").as_ptr(), cs("12").as_ptr(), &mut ctx), SiltStatus::Parse);
        assert_eq!(silt_context_from_fixture(cs("nope").as_ptr(), ptr::null(), &mut ctx), SiltStatus::Precondition);
        let mut v = SiltVerdict::default();
        assert_eq!(silt_check(ptr::null(), &mut v), SiltStatus::NullArgument);

        // a presilting but not silting complex cannot carry the theorem
        let one = include_str!("../../core/fixtures/a2_p1.cpx");
        assert_eq!(silt_context_new(cs(A2_ALG).as_ptr(), cs(one).as_ptr(), ptr::null(), &mut ctx), SiltStatus::Ok);
        assert_eq!(silt_check(ctx, &mut v), SiltStatus::Ok);
        assert!(v.presilting && !v.silting);
        let mut json = ptr::null_mut();
        assert_eq!(silt_theorem_report(ctx, 0, 0, 0, &mut json, ptr::null_mut()), SiltStatus::Precondition);
        assert!(json.is_null());
        silt_context_free(ctx);
        silt_context_free(ptr::null_mut());
    }
}
