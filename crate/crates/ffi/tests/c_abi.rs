use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use invsemi_ffi::*;

const SYM3: &str = r#"{"degree":3,"generators":[
  {"degree":3,"graph":[[0,1],[1,0],[2,2]]},
  {"degree":3,"graph":[[0,1],[1,2],[2,0]]},
  {"degree":3,"graph":[[1,1],[2,2]]}]}"#;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { invsemi_string_free(s) };
    text
}

fn last_error() -> String {
    let p = invsemi_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn semigroup_handle_lifecycle() {
    let json = CString::new(SYM3).unwrap();
    let mut h = ptr::null_mut();
    let status = unsafe { invsemi_semigroup_from_json(json.as_ptr(), &mut h) };
    assert_eq!(status, InvsemiStatus::Ok);
    assert_eq!(unsafe { invsemi_semigroup_size(h) }, 34);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { invsemi_semigroup_greens_json(h, &mut out) }, InvsemiStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["d_classes"].as_array().unwrap().len(), 4);

    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { invsemi_semigroup_eggbox_dot(h, &mut dot) }, InvsemiStatus::Ok);
    assert!(take(dot).starts_with("digraph eggbox {"));

    let u = CString::new(r#"[{"degree":3,"graph":[[0,1],[1,0],[2,2]]}]"#).unwrap();
    let v = CString::new(r#"[{"degree":3,"graph":[[0,0],[1,1],[2,2]]}]"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { invsemi_semigroup_howson_json(h, u.as_ptr(), v.as_ptr(), &mut out) }, InvsemiStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["intersection"]["size"], 1);

    unsafe { invsemi_semigroup_free(h) };
    unsafe { invsemi_semigroup_free(ptr::null_mut()) };
}

#[test]
fn status_codes_match_cli() {
    let mut h = ptr::null_mut();
    let bad = CString::new(r#"{"degree":2,"generators":[{"degree":2,"graph":[[0,"x"]]}]}"#).unwrap();
    assert_eq!(unsafe { invsemi_semigroup_from_json(bad.as_ptr(), &mut h) }, InvsemiStatus::Parse);
    assert!(last_error().contains("generators[0].graph[0][1]"));
    assert!(h.is_null());

    let mismatch = CString::new(r#"{"degree":2,"generators":[{"degree":3,"graph":[]}]}"#).unwrap();
    assert_eq!(unsafe { invsemi_semigroup_from_json(mismatch.as_ptr(), &mut h) }, InvsemiStatus::Precondition);

    assert_eq!(unsafe { invsemi_semigroup_from_json(ptr::null(), &mut h) }, InvsemiStatus::NullPointer);
    assert_eq!(unsafe { invsemi_semigroup_greens_json(ptr::null(), &mut ptr::null_mut()) }, InvsemiStatus::NullPointer);

    // a generator outside the coordinate bound is a precondition failure
    let u = CString::new("[[0,50]]").unwrap();
    let v = CString::new("[[0,3]]").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { invsemi_bicyclic_intersect_json(u.as_ptr(), v.as_ptr(), 10, 3, &mut out) }, InvsemiStatus::Precondition);
    assert!(out.is_null());
}

#[test]
fn bicyclic_entry_points() {
    let (mut a, mut b) = (0, 0);
    // x^{-1}x^2 · x^{-3}x^1 = x^{-2}x^1
    assert_eq!(unsafe { invsemi_bicyclic_multiply(1, 2, 3, 1, &mut a, &mut b) }, InvsemiStatus::Ok);
    assert_eq!((a, b), (2, 1));

    let u = CString::new("[[0,2]]").unwrap();
    let v = CString::new("[[0,3]]").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { invsemi_bicyclic_intersect_json(u.as_ptr(), v.as_ptr(), 60, 3, &mut out) }, InvsemiStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["generators"], serde_json::json!([[0, 6]]));
}

#[test]
fn monogenic_equality() {
    let pres = CString::new(r#"{"variant":"finite_kl","k":1,"l":2}"#).unwrap();
    let x = CString::new("x").unwrap();
    let xxx = CString::new("xxx").unwrap();
    let xx = CString::new("xx").unwrap();
    let mut eq = false;
    assert_eq!(unsafe { invsemi_monogenic_equal(pres.as_ptr(), x.as_ptr(), xxx.as_ptr(), &mut eq) }, InvsemiStatus::Ok);
    assert!(eq);
    assert_eq!(unsafe { invsemi_monogenic_equal(pres.as_ptr(), x.as_ptr(), xx.as_ptr(), &mut eq) }, InvsemiStatus::Ok);
    assert!(!eq);
}

#[test]
fn run_matches_cli_exit_codes() {
    let cases: [(&[&str], i32); 3] = [
        (&["bicyclic-summary", "--gens", "[[0,2]]"], 0),
        (&["bicyclic-summary", "--gens", "[[0,\"a\"]]"], 1),
        (&["bicyclic-summary", "--gens", "[[0,500]]"], 2),
    ];
    for (args, expected) in cases {
        let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
        let ptrs: Vec<_> = owned.iter().map(|c| c.as_ptr()).collect();
        let (mut code, mut out, mut err) = (-1, ptr::null_mut(), ptr::null_mut());
        let status = unsafe { invsemi_run(ptrs.as_ptr(), ptrs.len(), &mut code, &mut out, &mut err) };
        assert_eq!(status, InvsemiStatus::Ok);
        assert_eq!(code, expected, "{args:?}");
        let (out, err) = (take(out), take(err));
        assert_eq!(out.is_empty(), expected != 0);
        assert_eq!(err.is_empty(), expected == 0);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/invsemi.h")).unwrap();
    for name in [
        "invsemi_last_error",
        "invsemi_string_free",
        "invsemi_semigroup_from_json",
        "invsemi_semigroup_free",
        "invsemi_semigroup_size",
        "invsemi_semigroup_greens_json",
        "invsemi_semigroup_eggbox_dot",
        "invsemi_semigroup_howson_json",
        "invsemi_bicyclic_multiply",
        "invsemi_bicyclic_intersect_json",
        "invsemi_monogenic_equal",
        "invsemi_run",
        "typedef struct InvsemiSemigroup InvsemiSemigroup;",
        "INVSEMI_STATUS_CERTIFICATION = 3",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles and runs a small C program against the static library, when a C
/// compiler is on the PATH.
#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libinvsemi_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());

    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "invsemi.h"
int main(void) {
    InvsemiSemigroup *s = NULL;
    const char *json = "{\"degree\":2,\"generators\":[{\"degree\":2,\"graph\":[[0,1],[1,0]]},{\"degree\":2,\"graph\":[[0,0]]}]}";
    if (invsemi_semigroup_from_json(json, &s) != INVSEMI_STATUS_OK) { fprintf(stderr, "%s\n", invsemi_last_error()); return 1; }
    printf("%zu\n", invsemi_semigroup_size(s));
    invsemi_semigroup_free(s);
    if (invsemi_semigroup_from_json("{", &s) != INVSEMI_STATUS_PARSE) return 2;
    if (strlen(invsemi_last_error()) == 0) return 3;
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // the 2-point partial permutations generated: the symmetric group on {0,1},
    // the rank-one idempotents and partial bijections, and the empty map
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "7");
}

fn tempfile_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_abi_smoke");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
