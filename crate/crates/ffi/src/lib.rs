//! C bindings for cnftree.
//!
//! Formulas and verdicts are opaque handles. Every `*_parse_*`, `*_gen_*`
//! and solve function that hands out a handle has a matching `*_free`.
//! Strings returned through `char **` are released with
//! `cnftree_string_free`. Functions return a `CnfStatus`; on failure the
//! message is available from `cnftree_last_error` until the next failing
//! call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cnftree::bounds::{apply_bounds, BoundsVerdict};
use cnftree::format::{emit_dimacs, emit_native, parse_dimacs, parse_native};
use cnftree::gen::gen_fn;
use cnftree::oracle::{theorem_10_8_decide, truth_table_sat};
use cnftree::solver::{kumar_run, EmptyFormulaPolicy, PruneSchedule, SatResult, SolveConfig, Verdict};
use cnftree::{Formula, SolveError, Variable};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ResourceLimit = 4,
    GuardExceeded = 5,
    ContractViolation = 6,
    EmitError = 7,
    Panic = 99,
}

/// Matches the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnfResult {
    Satisfiable = 10,
    Unsatisfiable = 20,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnfSchedule {
    PerClause = 0,
    PostConstruction = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnfEmptyPolicy {
    Accept = 0,
    Reject = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnfBoundsVerdict {
    Unknown = 0,
    UnsatByBound1 = 1,
    UnsatByBound2 = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CnfSolveConfig {
    pub schedule: CnfSchedule,
    pub empty_policy: CnfEmptyPolicy,
    /// Live-node guard, root included. 0 disables it.
    pub node_limit: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CnfCounters {
    pub nodes_created: u64,
    pub nodes_deleted: u64,
    pub peak_nodes_incl_root: u64,
    pub current_nodes_incl_root: u64,
    pub prune_pointer_visits: u64,
    pub open_pointers_final: u64,
}

/// Opaque formula handle.
pub struct CnfFormula(Formula);

/// Opaque verdict handle.
pub struct CnfVerdict {
    verdict: Verdict,
    open_pointers: Option<u64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: CnfStatus, msg: impl Into<String>) -> CnfStatus {
    set_error(msg);
    status
}

fn guarded(f: impl FnOnce() -> CnfStatus) -> CnfStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CnfStatus::Panic, "panic inside cnftree"))
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, CnfStatus> {
    if text.is_null() {
        return Err(fail(CnfStatus::NullArgument, "text is null"));
    }
    CStr::from_ptr(text).to_str().map_err(|_| fail(CnfStatus::InvalidUtf8, "text is not valid UTF-8"))
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CnfStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CnfStatus::Ok
        }
        Err(_) => fail(CnfStatus::EmitError, "output contains a NUL byte"),
    }
}

/// Message of the last failure on this thread, or NULL. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn cnftree_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cnftree_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn parse_with(
    text: *const c_char,
    out: *mut *mut CnfFormula,
    parse: fn(&str) -> Result<Formula, cnftree::ParseError>,
) -> CnfStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CnfStatus::NullArgument, "out is null");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse(text) {
            Ok(f) => {
                write_handle(out, CnfFormula(f));
                CnfStatus::Ok
            }
            Err(e) => fail(CnfStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_parse_dimacs(text: *const c_char, out: *mut *mut CnfFormula) -> CnfStatus {
    parse_with(text, out, parse_dimacs)
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_parse_native(text: *const c_char, out: *mut *mut CnfFormula) -> CnfStatus {
    parse_with(text, out, parse_native)
}

/// The single clause `{x1, ..., xn}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_gen_fn(n: u32, out: *mut *mut CnfFormula) -> CnfStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CnfStatus::NullArgument, "out is null");
        }
        match gen_fn(n) {
            Ok(m) => {
                write_handle(out, CnfFormula(m.formula));
                CnfStatus::Ok
            }
            Err(e) => fail(CnfStatus::GuardExceeded, e.to_string()),
        }
    })
}

/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_free(f: *mut CnfFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of clauses, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_clause_count(f: *const CnfFormula) -> usize {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// Number of distinct variables, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_variable_count(f: *const CnfFormula) -> usize {
    f.as_ref().map_or(0, |f| f.0.variables().len())
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_emit_dimacs(f: *const CnfFormula, out: *mut *mut c_char) -> CnfStatus {
    guarded(|| {
        let (Some(f), false) = (f.as_ref(), out.is_null()) else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        match emit_dimacs(&f.0) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(CnfStatus::EmitError, e.to_string()),
        }
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_formula_emit_native(f: *const CnfFormula, out: *mut *mut c_char) -> CnfStatus {
    guarded(|| {
        let (Some(f), false) = (f.as_ref(), out.is_null()) else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        write_string(out, emit_native(&f.0))
    })
}

/// Per-clause pruning, accept the empty formula, 2^26 node guard.
#[no_mangle]
pub extern "C" fn cnftree_solve_config_default() -> CnfSolveConfig {
    let d = SolveConfig::default();
    CnfSolveConfig {
        schedule: CnfSchedule::PerClause,
        empty_policy: CnfEmptyPolicy::Accept,
        node_limit: d.node_limit.unwrap_or(0),
    }
}

fn to_config(c: &CnfSolveConfig) -> SolveConfig {
    SolveConfig {
        prune_schedule: match c.schedule {
            CnfSchedule::PerClause => PruneSchedule::PerClause,
            CnfSchedule::PostConstruction => PruneSchedule::PostConstruction,
        },
        empty_formula_policy: match c.empty_policy {
            CnfEmptyPolicy::Accept => EmptyFormulaPolicy::Accept,
            CnfEmptyPolicy::Reject => EmptyFormulaPolicy::Reject,
        },
        node_limit: (c.node_limit > 0).then_some(c.node_limit),
    }
}

/// Runs the clause-tree procedure. `cfg` may be NULL for the defaults.
///
/// # Safety
/// `f` must be a live handle, `cfg` NULL or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_solve(
    f: *const CnfFormula,
    cfg: *const CnfSolveConfig,
    out: *mut *mut CnfVerdict,
) -> CnfStatus {
    guarded(|| {
        let (Some(f), false) = (f.as_ref(), out.is_null()) else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        let cfg = cfg.as_ref().map_or_else(SolveConfig::default, to_config);
        match kumar_run(&f.0, &cfg) {
            Ok(run) => {
                let open = run.tree.open_pointer_count();
                write_handle(out, CnfVerdict { verdict: run.verdict, open_pointers: Some(open) });
                CnfStatus::Ok
            }
            Err(e @ SolveError::ResourceLimitExceeded { .. }) => fail(CnfStatus::ResourceLimit, e.to_string()),
            Err(e) => fail(CnfStatus::ContractViolation, e.to_string()),
        }
    })
}

unsafe fn oracle_with(
    f: *const CnfFormula,
    out: *mut *mut CnfVerdict,
    decide: fn(&Formula) -> Result<Verdict, cnftree::GuardError>,
) -> CnfStatus {
    guarded(|| {
        let (Some(f), false) = (f.as_ref(), out.is_null()) else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        match decide(&f.0) {
            Ok(v) => {
                write_handle(out, CnfVerdict { verdict: v, open_pointers: None });
                CnfStatus::Ok
            }
            Err(e) => fail(CnfStatus::GuardExceeded, e.to_string()),
        }
    })
}

/// Truth-table decision (at most 24 variables).
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_truth_table(f: *const CnfFormula, out: *mut *mut CnfVerdict) -> CnfStatus {
    oracle_with(f, out, truth_table_sat)
}

/// Search for a fully populated clause with no subset in the formula (at
/// most 24 variables).
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_thm108(f: *const CnfFormula, out: *mut *mut CnfVerdict) -> CnfStatus {
    oracle_with(f, out, theorem_10_8_decide)
}

/// # Safety
/// `v` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cnftree_verdict_result(v: *const CnfVerdict) -> CnfResult {
    match v.as_ref().map(|v| v.verdict.result) {
        Some(SatResult::Satisfiable) => CnfResult::Satisfiable,
        _ => CnfResult::Unsatisfiable,
    }
}

/// Fails with `CONTRACT_VIOLATION` for oracle verdicts, which carry no
/// counters.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_verdict_counters(v: *const CnfVerdict, out: *mut CnfCounters) -> CnfStatus {
    guarded(|| {
        let (Some(v), Some(out)) = (v.as_ref(), out.as_mut()) else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        let Some(c) = &v.verdict.counters else {
            return fail(CnfStatus::ContractViolation, "verdict has no counters");
        };
        *out = CnfCounters {
            nodes_created: c.nodes_created,
            nodes_deleted: c.nodes_deleted,
            peak_nodes_incl_root: c.peak_nodes_incl_root,
            current_nodes_incl_root: c.current_nodes_incl_root,
            prune_pointer_visits: c.prune_pointer_visits,
            open_pointers_final: v.open_pointers.unwrap_or(0),
        };
        CnfStatus::Ok
    })
}

/// Writes 1 (true) or 0 (false) for variable `var` of the witness.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_verdict_witness_value(v: *const CnfVerdict, var: u32, out: *mut i32) -> CnfStatus {
    guarded(|| {
        let (Some(v), Some(out)) = (v.as_ref(), out.as_mut()) else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        let Some(w) = &v.verdict.witness else {
            return fail(CnfStatus::ContractViolation, "verdict has no witness");
        };
        match Variable::new(var).and_then(|x| w.get(x)) {
            Some(b) => {
                *out = i32::from(b);
                CnfStatus::Ok
            }
            None => fail(CnfStatus::ContractViolation, format!("witness has no variable {var}")),
        }
    })
}

/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cnftree_verdict_free(v: *mut CnfVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Applies the bound filters; `out_forced` receives the number of forced
/// variables.
///
/// # Safety
/// `f` must be a live, tautology-free handle; the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_bounds(
    f: *const CnfFormula,
    out_verdict: *mut CnfBoundsVerdict,
    out_forced: *mut usize,
) -> CnfStatus {
    guarded(|| {
        let (Some(f), Some(out_verdict), Some(out_forced)) = (f.as_ref(), out_verdict.as_mut(), out_forced.as_mut())
        else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        match apply_bounds(&f.0) {
            Ok(r) => {
                *out_verdict = match r.verdict {
                    BoundsVerdict::Unknown => CnfBoundsVerdict::Unknown,
                    BoundsVerdict::UnsatByBound1 => CnfBoundsVerdict::UnsatByBound1,
                    BoundsVerdict::UnsatByBound2 => CnfBoundsVerdict::UnsatByBound2,
                };
                *out_forced = r.forced.len();
                CnfStatus::Ok
            }
            Err(e) => fail(CnfStatus::ContractViolation, e.to_string()),
        }
    })
}

/// DOT rendering of the final clause tree after solving.
///
/// # Safety
/// `f` must be a live handle, `cfg` NULL or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cnftree_final_tree_dot(
    f: *const CnfFormula,
    cfg: *const CnfSolveConfig,
    out: *mut *mut c_char,
) -> CnfStatus {
    guarded(|| {
        let (Some(f), false) = (f.as_ref(), out.is_null()) else {
            return fail(CnfStatus::NullArgument, "null argument");
        };
        let cfg = cfg.as_ref().map_or_else(SolveConfig::default, to_config);
        match kumar_run(&f.0, &cfg) {
            Ok(run) => write_string(out, run.tree.export_dot()),
            Err(e @ SolveError::ResourceLimitExceeded { .. }) => fail(CnfStatus::ResourceLimit, e.to_string()),
            Err(e) => fail(CnfStatus::ContractViolation, e.to_string()),
        }
    })
}
