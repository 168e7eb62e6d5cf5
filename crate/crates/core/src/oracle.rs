//! Exponential ground-truth procedures and brute-force checkers for the
//! structural facts about fully populated clauses.

use std::collections::BTreeSet;

use crate::error::GuardError;
use crate::formula::{Assignment, Clause, Formula, Literal, Variable};
use crate::solver::{Procedure, SatResult, Verdict};

pub const TRUTH_TABLE_MAX_VARS: usize = 24;
pub const FULLY_POPULATED_MAX_VARS: usize = 24;
pub const COMPLETE_FORMULA_MAX_VARS: usize = 12;
pub const SIBLING_CHECK_MAX_VARS: usize = 4;

/// Enumerates all `2^|V|` assignments, counting in binary with the lowest
/// variable as the least significant bit, and returns the first satisfying
/// one.
pub fn truth_table_sat(f: &Formula) -> Result<Verdict, GuardError> {
    let vars: Vec<Variable> = f.variables().iter().copied().collect();
    GuardError::check("truth_table_sat", TRUTH_TABLE_MAX_VARS, vars.len())?;
    // Clauses as (positive mask, negative mask) over positions in `vars`.
    let mut masks = Vec::with_capacity(f.len());
    for c in f.clauses() {
        if c.is_tautology() {
            continue;
        }
        let mut pos = 0u64;
        let mut neg = 0u64;
        for l in c.literals() {
            let bit = 1u64 << vars.binary_search(&l.var()).expect("variable of formula");
            if l.is_positive() {
                pos |= bit;
            } else {
                neg |= bit;
            }
        }
        masks.push((pos, neg));
    }
    for mask in 0..(1u64 << vars.len()) {
        if masks.iter().all(|&(pos, neg)| mask & pos != 0 || !mask & neg != 0) {
            return Ok(Verdict {
                result: SatResult::Satisfiable,
                witness: Some(Assignment::from_mask(&vars, mask)),
                counters: None,
                procedure: Procedure::TruthTable,
            });
        }
    }
    Ok(Verdict { result: SatResult::Unsatisfiable, witness: None, counters: None, procedure: Procedure::TruthTable })
}

/// Number of assignments over `V` that satisfy `f`.
pub fn count_models(f: &Formula) -> Result<u64, GuardError> {
    let vars: Vec<Variable> = f.variables().iter().copied().collect();
    GuardError::check("count_models", TRUTH_TABLE_MAX_VARS, vars.len())?;
    let mut n = 0;
    for mask in 0..(1u64 << vars.len()) {
        if f.evaluate(&Assignment::from_mask(&vars, mask)).expect("total assignment") {
            n += 1;
        }
    }
    Ok(n)
}

/// A clause is fully populated over `vars` when its variables are exactly
/// `vars`, one literal each.
pub fn is_fully_populated(c: &Clause, vars: &BTreeSet<Variable>) -> bool {
    !c.is_tautology() && c.len() == vars.len() && c.variables().all(|v| vars.contains(&v))
}

/// All `2^|V|` fully populated clauses over `vars`, in canonical order.
pub fn fully_populated_clauses(vars: &BTreeSet<Variable>) -> Result<Vec<Clause>, GuardError> {
    GuardError::check("fully_populated_clauses", FULLY_POPULATED_MAX_VARS, vars.len())?;
    let mut out = vec![Vec::<Literal>::new()];
    for &v in vars {
        let mut next = Vec::with_capacity(out.len() * 2);
        for prefix in out {
            let mut neg = prefix.clone();
            neg.push(v.negative());
            next.push(neg);
            let mut pos = prefix;
            pos.push(v.positive());
            next.push(pos);
        }
        out = next;
    }
    Ok(out.into_iter().map(Clause::from_literals).collect())
}

/// Searches for a fully populated clause over `V` none of whose subsets is a
/// clause of `f`. Such a clause exists iff `f` is satisfiable, and the
/// assignment falsifying it is a model.
pub fn theorem_10_8_decide(f: &Formula) -> Result<Verdict, GuardError> {
    let unsat = Verdict {
        result: SatResult::Unsatisfiable,
        witness: None,
        counters: None,
        procedure: Procedure::FullyPopulatedSearch,
    };
    if f.clauses().iter().any(Clause::is_null) {
        return Ok(unsat);
    }
    let relevant: Vec<&Clause> = f.clauses().iter().filter(|c| !c.is_tautology()).collect();
    for c in fully_populated_clauses(f.variables())? {
        if relevant.iter().all(|e| !e.is_subset_of(&c)) {
            let mut witness: Assignment = f.variables().iter().map(|&v| (v, false)).collect();
            for l in c.literals() {
                witness.set(l.var(), !l.is_positive());
            }
            return Ok(Verdict {
                result: SatResult::Satisfiable,
                witness: Some(witness),
                counters: None,
                procedure: Procedure::FullyPopulatedSearch,
            });
        }
    }
    Ok(unsat)
}

/// Every subset of `c`.
pub fn powerset(c: &Clause) -> Vec<Clause> {
    let lits = c.literals();
    (0..(1u64 << lits.len()))
        .map(|m| Clause::from_literals(lits.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &l)| l)))
        .collect()
}

/// The complete formula over `vars`, built as the union of the powersets of
/// all fully populated clauses. Has `3^|V|` clauses.
pub fn complete_formula(vars: &BTreeSet<Variable>) -> Result<BTreeSet<Clause>, GuardError> {
    GuardError::check("complete_formula", COMPLETE_FORMULA_MAX_VARS, vars.len())?;
    let mut out = BTreeSet::new();
    for c in fully_populated_clauses(vars)? {
        out.extend(powerset(&c));
    }
    Ok(out)
}

/// Two unequal clauses, both fully populated over `vars`.
pub fn are_siblings(a: &Clause, b: &Clause, vars: &BTreeSet<Variable>) -> bool {
    a != b && is_fully_populated(a, vars) && is_fully_populated(b, vars)
}

/// Brute-force check that for every pair of sibling clauses `C1, C2` over
/// `vars` and every `D1 ⊆ C1` that is not a subset of `C2`, some `V' ⊆ V`
/// and `D2 ⊆ C2` make `D1, D2` siblings over `V'`.
pub fn check_theorem_7_2(vars: &BTreeSet<Variable>) -> Result<bool, GuardError> {
    GuardError::check("check_theorem_7_2", SIBLING_CHECK_MAX_VARS, vars.len())?;
    let full = fully_populated_clauses(vars)?;
    let var_list: Vec<Variable> = vars.iter().copied().collect();
    let var_subsets: Vec<BTreeSet<Variable>> = (0..(1u64 << var_list.len()))
        .map(|m| var_list.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect();
    for c1 in &full {
        for c2 in &full {
            if !are_siblings(c1, c2, vars) {
                continue;
            }
            let p2 = powerset(c2);
            for d1 in powerset(c1) {
                if p2.contains(&d1) {
                    continue;
                }
                let found = var_subsets.iter().any(|sub| p2.iter().any(|d2| are_siblings(&d1, d2, sub)));
                if !found {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
