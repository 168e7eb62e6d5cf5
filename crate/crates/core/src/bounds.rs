//! Cardinality and literal-count bound filters.
//!
//! For a tautology-free formula over `n` variables with `T = 3^(n-1) -
//! 2^(n-1)`:
//!
//! 1. `‖F‖ > 3^n - 2^n` means unsatisfiable.
//! 2. `min(#(F,x), #(F,¬x)) > T` for some `x` means unsatisfiable.
//! 3. `#(F,x) <= T < #(F,¬x)` forces `x` to false in every model.
//! 4. `#(F,¬x) <= T < #(F,x)` forces `x` to true in every model.
//!
//! Thresholds are exact big integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::BoundsError;
use crate::formula::{Formula, Literal, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundsVerdict {
    UnsatByBound1,
    UnsatByBound2,
    Unknown,
}

impl fmt::Display for BoundsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundsVerdict::UnsatByBound1 => "UnsatByBound1",
            BoundsVerdict::UnsatByBound2 => "UnsatByBound2",
            BoundsVerdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub verdict: BoundsVerdict,
    /// Values forced by bounds 3 and 4. Empty for unsat verdicts.
    pub forced: BTreeMap<Variable, bool>,
    /// `(#(F,x), #(F,¬x))` per variable.
    pub stats: BTreeMap<Variable, (usize, usize)>,
}

impl BoundsReport {
    pub fn to_key_value(&self) -> String {
        let mut out = format!("verdict={}\n", self.verdict);
        let forced: Vec<String> = self.forced.iter().map(|(v, b)| format!("{v}={b}")).collect();
        out.push_str(&format!("forced={}\n", forced.join(" ")));
        for (v, (p, n)) in &self.stats {
            out.push_str(&format!("count.{v}={p}\ncount.¬{v}={n}\n"));
        }
        out
    }

    /// `verdict,forced` CSV row.
    pub fn to_csv_row(&self) -> String {
        let forced: Vec<String> = self.forced.iter().map(|(v, b)| format!("{v}={b}")).collect();
        format!("{},{}", self.verdict, forced.join(" "))
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        match (self.verdict, self.forced.is_empty()) {
            (BoundsVerdict::Unknown, true) => "Unknown, no forced literals".to_string(),
            (BoundsVerdict::Unknown, false) => {
                let forced: Vec<String> = self.forced.iter().map(|(v, b)| format!("{v}={b}")).collect();
                format!("Unknown, forced {}", forced.join(" "))
            }
            (v, _) => v.to_string(),
        }
    }
}

/// `#(F, l)`: number of clauses containing `l`.
pub fn literal_count(f: &Formula, l: Literal) -> usize {
    f.clauses().iter().filter(|c| c.contains(l)).count()
}

fn pow(base: u32, exp: usize) -> BigUint {
    BigUint::from(base).pow(u32::try_from(exp).expect("exponent fits u32"))
}

/// `3^n - 2^n`.
pub fn cardinality_threshold(n: usize) -> BigUint {
    pow(3, n) - pow(2, n)
}

/// `3^(n-1) - 2^(n-1)`, for `n >= 1`.
pub fn literal_threshold(n: usize) -> BigUint {
    assert!(n >= 1, "literal threshold needs at least one variable");
    pow(3, n - 1) - pow(2, n - 1)
}

/// Applies bounds 1 and 2, then a single pass of bounds 3 and 4.
///
/// With no variables only bound 1 applies (threshold 0).
pub fn apply_bounds(f: &Formula) -> Result<BoundsReport, BoundsError> {
    if let Some(index) = f.clauses().iter().position(|c| c.is_tautology()) {
        return Err(BoundsError::TautologyPresent { index: index + 1 });
    }
    let n = f.variables().len();
    let stats: BTreeMap<Variable, (usize, usize)> = f
        .variables()
        .iter()
        .map(|&v| (v, (literal_count(f, v.positive()), literal_count(f, v.negative()))))
        .collect();
    let mut report = BoundsReport { verdict: BoundsVerdict::Unknown, forced: BTreeMap::new(), stats };

    if BigUint::from(f.len()) > cardinality_threshold(n) {
        report.verdict = BoundsVerdict::UnsatByBound1;
        return Ok(report);
    }
    if n == 0 {
        return Ok(report);
    }
    let t = literal_threshold(n);
    for &(pos, neg) in report.stats.values() {
        if BigUint::from(pos.min(neg)) > t {
            report.verdict = BoundsVerdict::UnsatByBound2;
            return Ok(report);
        }
    }
    let mut forced = BTreeMap::new();
    for (&v, &(pos, neg)) in &report.stats {
        let (pos, neg) = (BigUint::from(pos), BigUint::from(neg));
        if pos <= t && t < neg {
            forced.insert(v, false);
        } else if neg <= t && t < pos {
            forced.insert(v, true);
        }
    }
    report.forced = forced;
    Ok(report)
}
