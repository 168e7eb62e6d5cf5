//! Differential check of the clause-tree procedure (both schedules) against
//! the truth-table and fully-populated-clause deciders.

use std::fmt::Write as _;

use crate::format::emit_native;
use crate::formula::Formula;
use crate::gen::{gen_exhaustive, random_suite, EXHAUSTIVE_MAX_CLAUSES, EXHAUSTIVE_MAX_VARS};
use crate::oracle::{theorem_10_8_decide, truth_table_sat};
use crate::solver::{kumar_solve, PruneSchedule, SatResult, SolveConfig, Verdict};

pub const RANDOM_SUITE_MAX_VARS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    /// All formulas over at most 3 variables with at most 4 clauses.
    Exhaustive,
    Random { nvars: usize, samples: usize, seed: u64 },
}

impl Suite {
    pub fn formulas(&self) -> Box<dyn Iterator<Item = Formula>> {
        match *self {
            Suite::Exhaustive => Box::new(
                gen_exhaustive(EXHAUSTIVE_MAX_VARS, EXHAUSTIVE_MAX_CLAUSES).expect("caps are the guard values"),
            ),
            Suite::Random { nvars, samples, seed } => Box::new(random_suite(nvars, samples, seed)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    /// Native serialization of the formula.
    pub formula: String,
    pub per_clause: Option<SatResult>,
    pub post_construction: Option<SatResult>,
    pub truth_table: SatResult,
    pub thm108: SatResult,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub satisfiable: usize,
    pub unsatisfiable: usize,
    /// Sorted by formula serialization.
    pub disagreements: Vec<Disagreement>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "checked={}", self.checked);
        let _ = writeln!(out, "satisfiable={}", self.satisfiable);
        let _ = writeln!(out, "unsatisfiable={}", self.unsatisfiable);
        let _ = writeln!(out, "disagreements={}", self.disagreements.len());
        for d in &self.disagreements {
            let show = |r: Option<SatResult>| r.map_or("error".to_string(), |r| r.to_string());
            let _ = writeln!(
                out,
                "--- per_clause={} post_construction={} truth_table={} thm108={} note={}",
                show(d.per_clause),
                show(d.post_construction),
                d.truth_table,
                d.thm108,
                d.note
            );
            out.push_str(&d.formula);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Deliberately corrupt the per-clause verdict on formulas with an odd
    /// clause count. Exists only to show the harness catches faults.
    pub inject_fault: bool,
}

fn witness_ok(f: &Formula, v: &Verdict) -> bool {
    match (&v.result, &v.witness) {
        (SatResult::Satisfiable, Some(w)) => f.evaluate(w).unwrap_or(false),
        (SatResult::Satisfiable, None) => false,
        (SatResult::Unsatisfiable, _) => true,
    }
}

/// Compares all four procedures on one formula.
pub fn check_formula(f: &Formula, opts: VerifyOptions) -> Result<SatResult, Disagreement> {
    let truth_table = truth_table_sat(f).expect("suite formulas are small").result;
    let thm = theorem_10_8_decide(f).expect("suite formulas are small");
    let mut notes = Vec::new();
    let mut run = |schedule| match kumar_solve(f, &SolveConfig::with_schedule(schedule)) {
        Ok(v) => {
            if !witness_ok(f, &v) {
                notes.push(format!("{schedule} witness invalid"));
            }
            Some(v.result)
        }
        Err(e) => {
            notes.push(format!("{schedule}: {e}"));
            None
        }
    };
    let mut per_clause = run(PruneSchedule::PerClause);
    let post_construction = run(PruneSchedule::PostConstruction);
    if !witness_ok(f, &thm) {
        notes.push("thm108 witness invalid".to_string());
    }
    if opts.inject_fault && f.len() % 2 == 1 {
        per_clause = per_clause.map(|r| match r {
            SatResult::Satisfiable => SatResult::Unsatisfiable,
            SatResult::Unsatisfiable => SatResult::Satisfiable,
        });
    }
    let agree = per_clause == Some(truth_table) && post_construction == Some(truth_table) && thm.result == truth_table;
    if agree && notes.is_empty() {
        Ok(truth_table)
    } else {
        Err(Disagreement {
            formula: emit_native(f),
            per_clause,
            post_construction,
            truth_table,
            thm108: thm.result,
            note: if notes.is_empty() { "verdict mismatch".to_string() } else { notes.join("; ") },
        })
    }
}

pub fn verify(suite: &Suite, opts: VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    for f in suite.formulas() {
        if f.is_empty() {
            continue;
        }
        report.checked += 1;
        match check_formula(&f, opts) {
            Ok(SatResult::Satisfiable) => report.satisfiable += 1,
            Ok(SatResult::Unsatisfiable) => report.unsatisfiable += 1,
            Err(d) => report.disagreements.push(d),
        }
    }
    report.disagreements.sort_by(|a, b| a.formula.cmp(&b.formula));
    report
}
