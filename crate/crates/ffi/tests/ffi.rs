use std::collections::BTreeSet;
use std::ffi::{CStr, CString};
use std::ptr;

use branchiso_ffi::*;

fn parse(src: &str) -> *mut BiBranch {
    let text = CString::new(src).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { bi_branch_parse(text.as_ptr(), 64, &mut out) };
    assert_eq!(status, BiStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = bi_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn cusp_resolution() {
    let b = parse("x = t^2\ny = t^3");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { bi_branch_resolve(b, &mut r) }, BiStatus::Ok);
    assert_eq!(unsafe { bi_resolution_length(r) }, 3);

    let mut mult = [0u32; 8];
    let mut len = 0usize;
    let s = unsafe { bi_resolution_multiplicities(r, mult.as_mut_ptr(), mult.len(), &mut len) };
    assert_eq!(s, BiStatus::Ok);
    assert_eq!(&mult[..len], &[2, 1, 1]);

    let mut w = [0i64; 2];
    let s = unsafe { bi_resolution_weights(r, w.as_mut_ptr(), w.len(), &mut len) };
    assert_eq!(s, BiStatus::BufferTooSmall);
    assert_eq!(len, 3);
    let mut w = [0i64; 3];
    let s = unsafe { bi_resolution_weights(r, w.as_mut_ptr(), w.len(), &mut len) };
    assert_eq!(s, BiStatus::Ok);
    assert_eq!(w, [-3, -2, -1]);

    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { bi_resolution_dot(r, &mut dot) }, BiStatus::Ok);
    let text = unsafe { CStr::from_ptr(dot) }.to_str().unwrap().to_owned();
    assert!(text.starts_with("graph dual {\n"));
    assert!(text.contains("G -- E3;"));
    unsafe {
        bi_string_free(dot);
        bi_resolution_free(r);
        bi_branch_free(b);
    }
}

#[test]
fn invariants_and_implicit() {
    let b = parse("x = t^4\ny = t^6 + t^7");
    let mut inv = BiInvariants::default();
    assert_eq!(unsafe { bi_branch_invariants(b, &mut inv) }, BiStatus::Ok);
    assert_eq!(
        inv,
        BiInvariants {
            multiplicity: 4,
            delta: 8,
            milnor: 16
        }
    );
    let c = parse("x = t^2\ny = t^3");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bi_branch_implicitize(c, &mut s) }, BiStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "f = y^2 - x^3");
    unsafe {
        bi_string_free(s);
        bi_branch_free(b);
        bi_branch_free(c);
    }
}

#[test]
fn equisingularity_and_isotopy() {
    let a = parse("x = t^2\ny = t^3");
    let b = parse("x = t^2\ny = 2 t^3");
    let c = parse("x = t^4\ny = t^6 + t^7");
    let mut eq = false;
    assert_eq!(unsafe { bi_equisingular(a, b, &mut eq) }, BiStatus::Ok);
    assert!(eq);
    assert_eq!(unsafe { bi_equisingular(a, c, &mut eq) }, BiStatus::Ok);
    assert!(!eq);

    let mut res = BiIsotopyResult::default();
    let s = unsafe { bi_isotopy_verify(a, b, 40, 0.05, 1e-3, 1e-3, &mut res) };
    assert_eq!(s, BiStatus::Ok);
    assert_eq!(res.stages, 2);
    assert!(res.pass);
    assert!(res.max_distance < 1e-3);

    let s = unsafe { bi_isotopy_verify(a, c, 40, 0.05, 1e-3, 1e-3, &mut res) };
    assert_eq!(s, BiStatus::NotEquisingular);
    assert!(last_error().contains("r differs"));
    unsafe {
        bi_branch_free(a);
        bi_branch_free(b);
        bi_branch_free(c);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bi_branch_parse(ptr::null(), 0, &mut out) }, BiStatus::NullPointer);
    let bad = CString::new("x = t^2\ny = t^3 + * t").unwrap();
    assert_eq!(unsafe { bi_branch_parse(bad.as_ptr(), 0, &mut out) }, BiStatus::Parse);
    assert!(last_error().contains("line 2, column 11"));
    let bad = CString::new("x = t^2 + t^3\ny = t^3").unwrap();
    assert_eq!(unsafe { bi_branch_parse(bad.as_ptr(), 0, &mut out) }, BiStatus::Parse);
    assert!(out.is_null());
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { bi_branch_resolve(ptr::null(), &mut r) }, BiStatus::NullPointer);
    assert_eq!(unsafe { bi_resolution_length(ptr::null()) }, 0);
    unsafe {
        bi_branch_free(ptr::null_mut());
        bi_resolution_free(ptr::null_mut());
        bi_string_free(ptr::null_mut());
    }
}

fn header() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/branchiso.h")).unwrap()
}

fn names_after(text: &str, marker: &str) -> BTreeSet<String> {
    text.match_indices(marker)
        .map(|(i, _)| {
            text[i + marker.len()..]
                .chars()
                .take_while(|c| c.is_alphanumeric() || *c == '_')
                .collect()
        })
        .collect()
}

#[test]
fn header_matches_exports() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exported = names_after(&src, "extern \"C\" fn ");
    let h = header();
    let declared: BTreeSet<String> = exported
        .iter()
        .filter(|n| h.contains(&format!(" {n}(")) || h.contains(&format!("*{n}(")))
        .cloned()
        .collect();
    assert_eq!(declared, exported);
    assert_eq!(names_after(&h, " bi_").len() + names_after(&h, "*bi_").len(), exported.len());
    for (name, value) in [
        ("Ok", BiStatus::Ok),
        ("NullPointer", BiStatus::NullPointer),
        ("Parse", BiStatus::Parse),
        ("NotEquisingular", BiStatus::NotEquisingular),
        ("BufferTooSmall", BiStatus::BufferTooSmall),
        ("Panic", BiStatus::Panic),
    ] {
        assert!(h.contains(&format!("BiStatus_{name} = {},", value as i32)), "{name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = std::process::Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    if !cc.status.success() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let main = dir.path().join("main.c");
    std::fs::write(
        &main,
        "#include \"branchiso.h\"\nint main(void) { BiStatus s = BiStatus_Ok; return (int)s; }\n",
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&main)
        .status()
        .unwrap();
    assert!(status.success());
}
