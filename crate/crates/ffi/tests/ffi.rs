use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use britton_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = britton_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn word_problem_round_trip() {
    let t = britton_tower_new();
    assert!(!t.is_null());
    let mut out = false;
    unsafe {
        assert_eq!(britton_wp_is_trivial(t, c("g").as_ptr(), c("c^9").as_ptr(), &mut out), BrittonStatus::Ok);
        assert!(out);
        assert_eq!(
            britton_wp_equal(t, c("h2").as_ptr(), c("t^-1 s t").as_ptr(), c("s^3").as_ptr(), &mut out),
            BrittonStatus::Ok
        );
        assert!(out);
        assert!(britton_last_error().is_null());
        britton_tower_free(t);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let t = britton_tower_new();
    let mut out = false;
    unsafe {
        let st = britton_wp_is_trivial(t, c("h7").as_ptr(), c("b").as_ptr(), &mut out);
        assert_eq!(st, BrittonStatus::UnknownGroup);
        assert!(last_error().contains("h7"));
        let st = britton_wp_is_trivial(t, c("h0").as_ptr(), c("s").as_ptr(), &mut out);
        assert_eq!(st, BrittonStatus::Alphabet);
        let st = britton_wp_is_trivial(t, c("h0").as_ptr(), c("b^").as_ptr(), &mut out);
        assert_eq!(st, BrittonStatus::Parse);
        let st = britton_wp_is_trivial(ptr::null(), c("h0").as_ptr(), c("b").as_ptr(), &mut out);
        assert_eq!(st, BrittonStatus::NullPointer);
        let st = britton_wp_is_trivial(t, c("h0").as_ptr(), ptr::null(), &mut out);
        assert_eq!(st, BrittonStatus::NullPointer);
        let st = britton_wp_is_trivial(t, c("h0").as_ptr(), c("b").as_ptr(), ptr::null_mut());
        assert_eq!(st, BrittonStatus::NullPointer);
        let bad = [0xffu8, 0];
        let st = britton_wp_is_trivial(t, c("h0").as_ptr(), bad.as_ptr().cast(), &mut out);
        assert_eq!(st, BrittonStatus::InvalidUtf8);
        britton_tower_free(t);
    }
}

#[test]
fn strings_and_membership() {
    let t = britton_tower_new();
    unsafe {
        let mut nf = ptr::null_mut();
        assert_eq!(britton_normal_form(t, c("h2").as_ptr(), c("t^-2 s t^2").as_ptr(), &mut nf), BrittonStatus::Ok);
        assert_eq!(CStr::from_ptr(nf).to_str().unwrap(), "s^9");
        britton_string_free(nf);

        let mut member = false;
        let mut exp = ptr::null_mut();
        let st = britton_subgroup_member(t, c("<s^3>").as_ptr(), c("s^-12").as_ptr(), &mut member, &mut exp);
        assert_eq!(st, BrittonStatus::Ok);
        assert!(member);
        assert_eq!(CStr::from_ptr(exp).to_str().unwrap(), "-4");
        britton_string_free(exp);

        let st = britton_subgroup_member(t, c("u").as_ptr(), c("a").as_ptr(), &mut member, &mut exp);
        assert_eq!(st, BrittonStatus::Ok);
        assert!(!member);
        assert!(exp.is_null());

        let st = britton_subgroup_member(t, c("<w>").as_ptr(), c("a").as_ptr(), &mut member, &mut exp);
        assert_ne!(st, BrittonStatus::Ok);
        britton_tower_free(t);
    }
}

#[test]
fn certificate_json() {
    let t = britton_tower_new();
    let mut pass = false;
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(britton_certify_nonhopfian(t, &mut pass, &mut json), BrittonStatus::Ok);
        assert!(pass);
        let text = CStr::from_ptr(json).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(v["well_defined"]["evidence"].as_array().unwrap().len(), 10);
        assert_eq!(v["surjectivity"]["evidence"].as_array().unwrap().len(), 11);
        britton_string_free(json);
        britton_tower_free(t);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(britton_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_matches_exports() {
    let header = include_str!("../include/britton.h");
    for name in [
        "britton_tower_new",
        "britton_tower_free",
        "britton_wp_is_trivial",
        "britton_wp_equal",
        "britton_normal_form",
        "britton_subgroup_member",
        "britton_certify_nonhopfian",
        "britton_last_error",
        "britton_string_free",
        "britton_version",
        "BRITTON_STATUS_PANIC",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles the C smoke test against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let profile_dir = deps.parent().unwrap();
    let lib = profile_dir.join("libbritton_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("c_api");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c_api.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "c api ok");
}
