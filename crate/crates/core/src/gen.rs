//! Formula generators: the single-clause blowup family, seeded random
//! formulas, and exhaustive enumeration of small formulas.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GuardError;
use crate::formula::{Clause, Formula, Literal, Variable};
use crate::oracle::complete_formula;

pub const RANDOM_MAX_VARS: usize = 24;
pub const EXHAUSTIVE_MAX_VARS: usize = 3;
pub const EXHAUSTIVE_MAX_CLAUSES: usize = 4;

/// `F_n = {{x1, ..., xn}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub formula: Formula,
    /// False for `n = 1`: the family proper starts at `n = 2`.
    pub in_family: bool,
}

pub fn gen_fn(n: u32) -> Result<FamilyMember, GuardError> {
    if n == 0 {
        return Err(GuardError { operation: "gen_fn (n must be >= 1)", limit: 1, actual: 0 });
    }
    let clause = Clause::from_literals((1..=n).map(|i| Variable::new(i).expect("i >= 1").positive()));
    Ok(FamilyMember { formula: Formula::new([clause]), in_family: n > 1 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub nvars: usize,
    pub nclauses: usize,
    pub width: RangeInclusive<usize>,
    /// When set, each clause has a one-in-four chance of also receiving the
    /// complement of one of its literals.
    pub tautologies: bool,
    pub seed: u64,
}

/// Clause widths are uniform over `width`, variables are drawn without
/// replacement from `x1..x_nvars`, and polarities are fair coin flips.
/// Duplicate clauses collapse, so the result may have fewer than
/// `nclauses` clauses.
pub fn gen_random(spec: &RandomSpec) -> Result<Formula, GuardError> {
    GuardError::check("gen_random", RANDOM_MAX_VARS, spec.nvars)?;
    GuardError::check("gen_random width", spec.nvars, *spec.width.end())?;
    if spec.width.is_empty() {
        return Err(GuardError { operation: "gen_random width range is empty", limit: *spec.width.end(), actual: *spec.width.start() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut clauses = Vec::with_capacity(spec.nclauses);
    for _ in 0..spec.nclauses {
        let width = rng.random_range(spec.width.clone());
        let mut lits: Vec<Literal> = sample(&mut rng, spec.nvars, width)
            .into_iter()
            .map(|i| Literal::new(Variable::new(i as u32 + 1).expect("index >= 1"), rng.random_bool(0.5)))
            .collect();
        if spec.tautologies && !lits.is_empty() && rng.random_ratio(1, 4) {
            let pick = lits[rng.random_range(0..lits.len())];
            lits.push(pick.complement());
        }
        clauses.push(Clause::from_literals(lits));
    }
    Ok(Formula::new(clauses))
}

/// The random suite used by the equivalence checks: for each sample, the
/// variable count is uniform in `1..=max_vars`, the clause count in `1..=6`
/// and the width in `0..=nvars`. Never yields the empty formula.
pub fn random_suite(max_vars: usize, samples: usize, seed: u64) -> impl Iterator<Item = Formula> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(move |_| {
        let nvars = master.random_range(1..=max_vars);
        let spec = RandomSpec {
            nvars,
            nclauses: master.random_range(1..=6),
            width: 0..=nvars,
            tautologies: false,
            seed: master.random(),
        };
        gen_random(&spec).expect("suite parameters are within guards")
    })
}

/// Every formula made of 1 to `max_clauses` distinct non-tautology clauses
/// over `x1..x_nvars`, in lexicographic order of clause-index combinations
/// over the canonically ordered complete formula.
pub fn gen_exhaustive(nvars: usize, max_clauses: usize) -> Result<ExhaustiveIter, GuardError> {
    GuardError::check("gen_exhaustive nvars", EXHAUSTIVE_MAX_VARS, nvars)?;
    GuardError::check("gen_exhaustive max_clauses", EXHAUSTIVE_MAX_CLAUSES, max_clauses)?;
    let vars: BTreeSet<Variable> = (1..=nvars as u32).map(|i| Variable::new(i).expect("i >= 1")).collect();
    let pool: Vec<Clause> = complete_formula(&vars)?.into_iter().collect();
    let k = if max_clauses == 0 || pool.is_empty() { 0 } else { 1 };
    Ok(ExhaustiveIter { pool, max_clauses, combo: (0..k).collect(), done: k == 0 })
}

pub struct ExhaustiveIter {
    pool: Vec<Clause>,
    max_clauses: usize,
    combo: Vec<usize>,
    done: bool,
}

impl ExhaustiveIter {
    fn advance(&mut self) {
        let n = self.pool.len();
        let k = self.combo.len();
        // Rightmost position that can still move.
        for i in (0..k).rev() {
            if self.combo[i] < n - k + i {
                self.combo[i] += 1;
                for j in i + 1..k {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return;
            }
        }
        if k < self.max_clauses && k < n {
            self.combo = (0..=k).collect();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for ExhaustiveIter {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        if self.done {
            return None;
        }
        let f = Formula::new(self.combo.iter().map(|&i| self.pool[i].clone()));
        self.advance();
        Some(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::literal_count;
    use crate::formula::tests::{nx, x};

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn fn_examples() {
        let f2 = gen_fn(2).unwrap();
        assert_eq!(f2.formula, Formula::new([Clause::from_literals([x(1), x(2)])]));
        assert!(f2.in_family);
        let f1 = gen_fn(1).unwrap();
        assert_eq!(f1.formula, Formula::new([Clause::from_literals([x(1)])]));
        assert!(!f1.in_family);
        assert!(gen_fn(0).is_err());
        for n in 1..=20u32 {
            let f = gen_fn(n).unwrap().formula;
            assert_eq!(f.len(), 1);
            assert_eq!(f.clauses()[0].len(), n as usize);
            for i in 1..=n {
                assert_eq!(literal_count(&f, x(i)), 1);
                assert_eq!(literal_count(&f, nx(i)), 0);
            }
        }
    }

    #[test]
    fn random_is_deterministic() {
        let spec = RandomSpec { nvars: 2, nclauses: 2, width: 1..=2, tautologies: false, seed: 7 };
        assert_eq!(gen_random(&spec).unwrap(), gen_random(&spec).unwrap());
        let a: Vec<Formula> = random_suite(4, 50, 3).collect();
        let b: Vec<Formula> = random_suite(4, 50, 3).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn random_without_tautologies() {
        for seed in 0..200 {
            let spec = RandomSpec { nvars: 4, nclauses: 6, width: 0..=4, tautologies: false, seed };
            let f = gen_random(&spec).unwrap();
            assert!(!f.has_tautology());
            assert!(f.clauses().iter().all(|c| c.len() <= 4));
        }
    }

    #[test]
    fn random_with_tautologies_produces_some() {
        let found = (0..50).any(|seed| {
            let spec = RandomSpec { nvars: 4, nclauses: 6, width: 1..=3, tautologies: true, seed };
            gen_random(&spec).unwrap().has_tautology()
        });
        assert!(found);
    }

    #[test]
    fn random_guards() {
        let spec = RandomSpec { nvars: 2, nclauses: 1, width: 1..=3, tautologies: false, seed: 0 };
        assert!(gen_random(&spec).is_err());
        let spec = RandomSpec { nvars: 25, nclauses: 1, width: 1..=3, tautologies: false, seed: 0 };
        assert!(gen_random(&spec).is_err());
    }

    #[test]
    fn exhaustive_counts() {
        let one: Vec<Formula> = gen_exhaustive(1, 1).unwrap().collect();
        assert_eq!(
            one,
            vec![
                Formula::new([Clause::null()]),
                Formula::new([Clause::from_literals([nx(1)])]),
                Formula::new([Clause::from_literals([x(1)])]),
            ]
        );
        assert_eq!(gen_exhaustive(1, 2).unwrap().count(), 6);
        for nvars in 0..=3usize {
            for m in 0..=4u64 {
                let pool = 3u64.pow(nvars as u32);
                let expected: u64 = (1..=m).map(|k| binom(pool, k)).sum();
                assert_eq!(gen_exhaustive(nvars, m as usize).unwrap().count() as u64, expected, "nvars={nvars} m={m}");
            }
        }
        assert!(gen_exhaustive(4, 1).is_err());
        assert!(gen_exhaustive(3, 5).is_err());
    }

    #[test]
    fn exhaustive_unique_and_duplicate_free() {
        let all: Vec<Formula> = gen_exhaustive(2, 3).unwrap().collect();
        let distinct: BTreeSet<Vec<Clause>> = all
            .iter()
            .map(|f| {
                let mut c = f.clauses().to_vec();
                c.sort();
                c
            })
            .collect();
        assert_eq!(distinct.len(), all.len());
        for f in &all {
            let set: BTreeSet<&Clause> = f.clauses().iter().collect();
            assert_eq!(set.len(), f.len());
            assert!(!f.has_tautology());
        }
    }
}
