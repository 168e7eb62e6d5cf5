use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use cnftree_ffi::*;

fn parse_native(text: &str) -> *mut CnfFormula {
    let text = CString::new(text).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { cnftree_formula_parse_native(text.as_ptr(), &mut f) }, CnfStatus::Ok);
    f
}

fn last_error() -> String {
    let p = cnftree_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn take_string(p: *mut std::os::raw::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { cnftree_string_free(p) };
    s
}

#[test]
fn family_counters() {
    for n in 2..=12u32 {
        let mut f = ptr::null_mut();
        assert_eq!(unsafe { cnftree_formula_gen_fn(n, &mut f) }, CnfStatus::Ok);
        let mut v = ptr::null_mut();
        assert_eq!(unsafe { cnftree_solve(f, ptr::null(), &mut v) }, CnfStatus::Ok);
        assert_eq!(unsafe { cnftree_verdict_result(v) }, CnfResult::Satisfiable);
        let mut c = CnfCounters::default();
        assert_eq!(unsafe { cnftree_verdict_counters(v, &mut c) }, CnfStatus::Ok);
        assert_eq!(c.peak_nodes_incl_root, 1 << n);
        assert_eq!(c.prune_pointer_visits, (1 << (n + 1)) - 1);
        assert_eq!(c.nodes_deleted, 0);
        assert_eq!(c.open_pointers_final, (1 << n) - 1);
        unsafe {
            cnftree_verdict_free(v);
            cnftree_formula_free(f);
        }
    }
}

#[test]
fn two_clause_witness_and_oracles() {
    let f = parse_native("-1\n1 -2\n");
    assert_eq!(unsafe { cnftree_formula_clause_count(f) }, 2);
    assert_eq!(unsafe { cnftree_formula_variable_count(f) }, 2);
    type Solve = unsafe extern "C" fn(*const CnfFormula, *mut *mut CnfVerdict) -> CnfStatus;
    unsafe extern "C" fn solve_default(f: *const CnfFormula, out: *mut *mut CnfVerdict) -> CnfStatus {
        cnftree_solve(f, ptr::null(), out)
    }
    for solve in [solve_default as Solve, cnftree_truth_table as Solve, cnftree_thm108 as Solve] {
        let mut v = ptr::null_mut();
        assert_eq!(unsafe { solve(f, &mut v) }, CnfStatus::Ok);
        assert_eq!(unsafe { cnftree_verdict_result(v) }, CnfResult::Satisfiable);
        for var in [1, 2] {
            let mut value = -1;
            assert_eq!(unsafe { cnftree_verdict_witness_value(v, var, &mut value) }, CnfStatus::Ok);
            assert_eq!(value, 0);
        }
        let mut value = -1;
        assert_eq!(unsafe { cnftree_verdict_witness_value(v, 3, &mut value) }, CnfStatus::ContractViolation);
        unsafe { cnftree_verdict_free(v) };
    }

    let mut v = ptr::null_mut();
    assert_eq!(unsafe { cnftree_truth_table(f, &mut v) }, CnfStatus::Ok);
    let mut c = CnfCounters::default();
    assert_eq!(unsafe { cnftree_verdict_counters(v, &mut c) }, CnfStatus::ContractViolation);
    unsafe { cnftree_verdict_free(v) };

    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { cnftree_final_tree_dot(f, ptr::null(), &mut dot) }, CnfStatus::Ok);
    let expected = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/example-d.dot")).unwrap();
    assert_eq!(take_string(dot), expected);
    unsafe { cnftree_formula_free(f) };
}

#[test]
fn unsat_and_empty_policy() {
    let f = parse_native("1\n-1\n");
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { cnftree_solve(f, ptr::null(), &mut v) }, CnfStatus::Ok);
    assert_eq!(unsafe { cnftree_verdict_result(v) }, CnfResult::Unsatisfiable);
    let mut value = 0;
    assert_eq!(unsafe { cnftree_verdict_witness_value(v, 1, &mut value) }, CnfStatus::ContractViolation);
    unsafe {
        cnftree_verdict_free(v);
        cnftree_formula_free(f);
    }

    let empty = parse_native("");
    let mut cfg = cnftree_solve_config_default();
    for (policy, expected) in [(CnfEmptyPolicy::Accept, CnfResult::Satisfiable), (CnfEmptyPolicy::Reject, CnfResult::Unsatisfiable)] {
        cfg.empty_policy = policy;
        let mut v = ptr::null_mut();
        assert_eq!(unsafe { cnftree_solve(empty, &cfg, &mut v) }, CnfStatus::Ok);
        assert_eq!(unsafe { cnftree_verdict_result(v) }, expected);
        unsafe { cnftree_verdict_free(v) };
    }
    unsafe { cnftree_formula_free(empty) };
}

#[test]
fn node_limit_reports_resource_error() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { cnftree_formula_gen_fn(12, &mut f) }, CnfStatus::Ok);
    let mut cfg = cnftree_solve_config_default();
    cfg.node_limit = 100;
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { cnftree_solve(f, &cfg, &mut v) }, CnfStatus::ResourceLimit);
    assert!(v.is_null());
    assert!(last_error().contains("100"));
    cfg.node_limit = 0;
    cfg.schedule = CnfSchedule::PostConstruction;
    assert_eq!(unsafe { cnftree_solve(f, &cfg, &mut v) }, CnfStatus::Ok);
    unsafe {
        cnftree_verdict_free(v);
        cnftree_formula_free(f);
    }
}

#[test]
fn bounds_filters() {
    let f = parse_native("1\n-1\n");
    let mut verdict = CnfBoundsVerdict::Unknown;
    let mut forced = 0usize;
    assert_eq!(unsafe { cnftree_bounds(f, &mut verdict, &mut forced) }, CnfStatus::Ok);
    assert_ne!(verdict, CnfBoundsVerdict::Unknown);
    unsafe { cnftree_formula_free(f) };

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cnftree_formula_gen_fn(8, &mut g) }, CnfStatus::Ok);
    assert_eq!(unsafe { cnftree_bounds(g, &mut verdict, &mut forced) }, CnfStatus::Ok);
    assert_eq!(verdict, CnfBoundsVerdict::Unknown);
    assert_eq!(forced, 0);
    unsafe { cnftree_formula_free(g) };

    let t = parse_native("1 -1\n");
    assert_eq!(unsafe { cnftree_bounds(t, &mut verdict, &mut forced) }, CnfStatus::ContractViolation);
    unsafe { cnftree_formula_free(t) };
}

#[test]
fn emit_round_trip() {
    let f = parse_native("1 #t\n-2 3\n\n");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cnftree_formula_emit_native(f, &mut out) }, CnfStatus::Ok);
    let native = take_string(out);
    let g = parse_native(&native);
    assert_eq!(unsafe { cnftree_formula_emit_native(g, &mut out) }, CnfStatus::Ok);
    assert_eq!(take_string(out), native);
    assert_eq!(unsafe { cnftree_formula_emit_dimacs(f, &mut out) }, CnfStatus::EmitError);
    unsafe {
        cnftree_formula_free(f);
        cnftree_formula_free(g);
    }

    let h = parse_native("-1\n1 -2\n");
    assert_eq!(unsafe { cnftree_formula_emit_dimacs(h, &mut out) }, CnfStatus::Ok);
    assert_eq!(take_string(out), "p cnf 2 2\n-1 0\n1 -2 0\n");
    unsafe { cnftree_formula_free(h) };
}

#[test]
fn error_paths() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { cnftree_formula_parse_dimacs(ptr::null(), &mut f) }, CnfStatus::NullArgument);
    let bad = CString::new("p cnf 1 1\n1 2 0\n").unwrap();
    assert_eq!(unsafe { cnftree_formula_parse_dimacs(bad.as_ptr(), &mut f) }, CnfStatus::ParseError);
    assert!(f.is_null());
    assert!(last_error().contains("line 2"), "{}", last_error());
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { cnftree_formula_parse_native(invalid.as_ptr().cast(), &mut f) },
        CnfStatus::InvalidUtf8
    );
    assert_eq!(unsafe { cnftree_formula_gen_fn(0, &mut f) }, CnfStatus::GuardExceeded);

    let big = parse_native(&(1..=25).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { cnftree_truth_table(big, &mut v) }, CnfStatus::GuardExceeded);
    assert_eq!(unsafe { cnftree_solve(ptr::null(), ptr::null(), &mut v) }, CnfStatus::NullArgument);
    assert_eq!(unsafe { cnftree_formula_clause_count(ptr::null()) }, 0);
    unsafe {
        cnftree_formula_free(big);
        cnftree_formula_free(ptr::null_mut());
        cnftree_verdict_free(ptr::null_mut());
        cnftree_string_free(ptr::null_mut());
    }
}

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_is_valid_c_and_cpp() {
    if !have_cc() {
        eprintln!("cc not found, skipping");
        return;
    }
    let smoke = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c");
    for lang in ["c", "c++"] {
        let status = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(header_dir())
            .arg(&smoke)
            .status()
            .unwrap();
        assert!(status.success(), "{lang}");
    }
}

#[test]
fn c_program_links_against_static_library() {
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libcnftree_ffi.a");
    if !have_cc() || !lib.exists() {
        eprintln!("cc or {} not found, skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-I")
        .arg(header_dir())
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
