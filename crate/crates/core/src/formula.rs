//! CNF data model with set semantics.
//!
//! Clauses and formulas are sets: literals inside a clause are kept in a
//! canonical order (ascending variable index, negative before positive) and
//! exact-duplicate clauses are collapsed when a [`Formula`] is built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::EvalError;

/// A propositional variable `x_i`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

impl Variable {
    /// Returns `None` for index 0.
    pub fn new(index: u32) -> Option<Variable> {
        (index >= 1).then_some(Variable(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable or its complement.
///
/// The derived ordering compares the variable first and then the polarity,
/// with `false < true`, which yields the canonical negative-before-positive
/// order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Variable,
    positive: bool,
}

impl Literal {
    pub fn new(var: Variable, positive: bool) -> Literal {
        Literal { var, positive }
    }

    /// Builds a literal from a signed DIMACS-style integer. Returns `None`
    /// for zero.
    pub fn from_dimacs(value: i64) -> Option<Literal> {
        let index = u32::try_from(value.unsigned_abs()).ok()?;
        Variable::new(index).map(|v| Literal::new(v, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let i = i64::from(self.var.0);
        if self.positive {
            i
        } else {
            -i
        }
    }

    pub fn var(self) -> Variable {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn complement(self) -> Literal {
        Literal { var: self.var, positive: !self.positive }
    }

    /// Truth value of the literal when its variable has `value`.
    pub fn eval(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "¬{}", self.var)
        }
    }
}

/// Raw clause token before normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Token {
    Lit(Literal),
    True,
    False,
}

impl From<Literal> for Token {
    fn from(l: Literal) -> Token {
        Token::Lit(l)
    }
}

/// A disjunction of literals, stored as a canonical set.
///
/// A clause is a tautology when its raw input contained the constant `true`
/// or a complementary pair. The empty, non-tautology clause is the null
/// clause, which no assignment satisfies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
    tautology: bool,
}

impl Clause {
    /// Normalizes a raw token sequence. `false` constants are dropped,
    /// duplicates collapse, and `true` or a complementary pair sets the
    /// tautology flag.
    pub fn normalize<I>(tokens: I) -> Clause
    where
        I: IntoIterator,
        I::Item: Into<Token>,
    {
        let mut set = BTreeSet::new();
        let mut tautology = false;
        for t in tokens {
            match t.into() {
                Token::Lit(l) => {
                    set.insert(l);
                }
                Token::True => tautology = true,
                Token::False => {}
            }
        }
        let literals: Vec<Literal> = set.into_iter().collect();
        tautology |= literals.windows(2).any(|w| w[0].var == w[1].var);
        Clause { literals, tautology }
    }

    /// Convenience constructor from literals only.
    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Clause {
        Clause::normalize(lits)
    }

    /// Builds a clause from signed DIMACS integers. Panics on zero.
    pub fn from_dimacs(values: &[i64]) -> Clause {
        Clause::normalize(
            values.iter().map(|&v| Literal::from_dimacs(v).expect("literal 0 is not a literal")),
        )
    }

    pub fn null() -> Clause {
        Clause { literals: Vec::new(), tautology: false }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.tautology
    }

    pub fn is_null(&self) -> bool {
        self.literals.is_empty() && !self.tautology
    }

    /// True when the literals contain a complementary pair, as opposed to a
    /// tautology introduced only by the constant `true`.
    pub fn has_complementary_pair(&self) -> bool {
        self.literals.windows(2).any(|w| w[0].var == w[1].var)
    }

    pub fn contains(&self, l: Literal) -> bool {
        self.literals.binary_search(&l).is_ok()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        let mut last = None;
        self.literals.iter().filter_map(move |l| {
            if last == Some(l.var) {
                None
            } else {
                last = Some(l.var);
                Some(l.var)
            }
        })
    }

    /// Literal-set inclusion. Tautology flags are ignored.
    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.literals.iter().all(|l| other.contains(*l))
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool, EvalError> {
        let mut sat = self.tautology;
        for &l in &self.literals {
            let v = a.get(l.var).ok_or(EvalError::Unassigned(l.var))?;
            sat |= l.eval(v);
        }
        Ok(sat)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        if self.tautology && !self.has_complementary_pair() {
            if !self.literals.is_empty() {
                f.write_str(", ")?;
            }
            f.write_str("true")?;
        }
        f.write_str("}")
    }
}

/// A conjunction of clauses with set semantics. Input order is preserved.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Formula {
    clauses: Vec<Clause>,
    variables: BTreeSet<Variable>,
}

impl Formula {
    pub fn new<I: IntoIterator<Item = Clause>>(clauses: I) -> Formula {
        Formula::with_duplicate_count(clauses).0
    }

    /// Like [`Formula::new`], also returning how many exact-duplicate
    /// clauses were dropped.
    pub fn with_duplicate_count<I: IntoIterator<Item = Clause>>(clauses: I) -> (Formula, usize) {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        let mut dropped = 0;
        for c in clauses {
            if seen.insert(c.clone()) {
                kept.push(c);
            } else {
                dropped += 1;
            }
        }
        let variables = kept.iter().flat_map(|c| c.variables()).collect();
        (Formula { clauses: kept, variables }, dropped)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// The variable set `V`: every variable occurring in some clause.
    pub fn variables(&self) -> &BTreeSet<Variable> {
        &self.variables
    }

    /// Cardinality `‖F‖`.
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn max_variable(&self) -> Option<Variable> {
        self.variables.iter().next_back().copied()
    }

    pub fn has_tautology(&self) -> bool {
        self.clauses.iter().any(Clause::is_tautology)
    }

    /// Copy of the formula with tautology clauses removed.
    pub fn without_tautologies(&self) -> Formula {
        Formula::new(self.clauses.iter().filter(|c| !c.is_tautology()).cloned())
    }

    /// Standard semantics: the empty formula is true.
    pub fn evaluate(&self, a: &Assignment) -> Result<bool, EvalError> {
        for c in &self.clauses {
            if !c.evaluate(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A total map from a stated variable set to truth values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: BTreeMap<Variable, bool>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, v: Variable, value: bool) {
        self.values.insert(v, value);
    }

    pub fn get(&self, v: Variable) -> Option<bool> {
        self.values.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    /// The assignment over `vars` encoded by the bits of `mask`, with the
    /// first variable in `vars` as the least significant bit.
    pub fn from_mask(vars: &[Variable], mask: u64) -> Assignment {
        vars.iter().enumerate().map(|(i, &v)| (v, mask >> i & 1 == 1)).collect()
    }
}

impl FromIterator<(Variable, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Variable, bool)>>(iter: I) -> Assignment {
        Assignment { values: iter.into_iter().collect() }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}={b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn x(i: u32) -> Literal {
        Variable::new(i).unwrap().positive()
    }

    pub(crate) fn nx(i: u32) -> Literal {
        Variable::new(i).unwrap().negative()
    }

    pub(crate) fn var(i: u32) -> Variable {
        Variable::new(i).unwrap()
    }

    fn assign(pairs: &[(u32, bool)]) -> Assignment {
        pairs.iter().map(|&(i, b)| (var(i), b)).collect()
    }

    #[test]
    fn variable_zero_rejected() {
        assert!(Variable::new(0).is_none());
        assert!(Literal::from_dimacs(0).is_none());
    }

    #[test]
    fn complement_is_involution() {
        for l in [x(1), nx(1), x(7)] {
            assert_eq!(l.complement().complement(), l);
            assert_ne!(l.complement(), l);
        }
    }

    #[test]
    fn normalize_complementary_pair_is_tautology() {
        let c = Clause::normalize([x(1), nx(1)]);
        assert!(c.is_tautology());
        assert!(!c.is_null());
    }

    #[test]
    fn normalize_empty_is_null() {
        let c = Clause::normalize(Vec::<Token>::new());
        assert!(c.is_null());
        assert!(!c.is_tautology());
        assert_eq!(c, Clause::null());
    }

    #[test]
    fn normalize_dedups_and_sorts() {
        let c = Clause::normalize([x(2), x(2), x(1)]);
        assert_eq!(c.literals(), &[x(1), x(2)]);
        assert!(!c.is_tautology());
    }

    #[test]
    fn normalize_constants() {
        let t = Clause::normalize([Token::Lit(x(1)), Token::True]);
        assert!(t.is_tautology());
        assert_eq!(t.literals(), &[x(1)]);
        let f = Clause::normalize([Token::Lit(x(1)), Token::False]);
        assert_eq!(f, Clause::from_literals([x(1)]));
        assert!(Clause::normalize([Token::False]).is_null());
    }

    #[test]
    fn canonical_order_negative_first() {
        let c = Clause::normalize([x(2), nx(1), x(1)]);
        assert_eq!(c.literals(), &[nx(1), x(1), x(2)]);
        assert_eq!(c.variables().collect::<Vec<_>>(), vec![var(1), var(2)]);
    }

    #[test]
    fn evaluate_clause_examples() {
        let c = Clause::from_literals([x(1), nx(2)]);
        assert!(c.evaluate(&assign(&[(1, false), (2, false)])).unwrap());
        assert!(!Clause::null().evaluate(&assign(&[(1, true)])).unwrap());
        assert!(Clause::from_literals([x(1)]).evaluate(&assign(&[(1, true)])).unwrap());
    }

    #[test]
    fn evaluate_missing_variable_is_error() {
        let c = Clause::from_literals([x(1), x(3)]);
        assert_eq!(c.evaluate(&assign(&[(1, false)])), Err(EvalError::Unassigned(var(3))));
    }

    #[test]
    fn evaluate_formula_examples() {
        // (x1 ∨ x2) ∧ (x3 ∨ ¬x2 ∨ x1) ∧ (x1)
        let f = Formula::new([
            Clause::from_literals([x(1), x(2)]),
            Clause::from_literals([x(3), nx(2), x(1)]),
            Clause::from_literals([x(1)]),
        ]);
        assert!(f.evaluate(&assign(&[(1, true), (2, false), (3, true)])).unwrap());

        let null = Formula::new([Clause::null()]);
        for a in [assign(&[]), assign(&[(1, true)])] {
            assert!(!null.evaluate(&a).unwrap());
        }
        assert!(Formula::default().evaluate(&Assignment::new()).unwrap());
    }

    #[test]
    fn formula_collapses_duplicates() {
        let (f, dropped) = Formula::with_duplicate_count([
            Clause::from_literals([x(1)]),
            Clause::from_literals([x(2), nx(1)]),
            Clause::from_literals([x(1)]),
        ]);
        assert_eq!(f.len(), 2);
        assert_eq!(dropped, 1);
        assert_eq!(f.variables().iter().copied().collect::<Vec<_>>(), vec![var(1), var(2)]);
    }

    // Exhaustive over every clause on at most 4 variables.
    fn all_clauses(n: u32) -> Vec<Vec<Literal>> {
        let mut out = vec![vec![]];
        for i in 1..=n {
            let mut next = Vec::new();
            for c in &out {
                next.push(c.clone());
                let mut p = c.clone();
                p.push(x(i));
                next.push(p);
                let mut q = c.clone();
                q.push(nx(i));
                next.push(q.clone());
                q.push(x(i));
                next.push(q);
            }
            out = next;
        }
        out
    }

    #[test]
    fn tautology_true_under_every_assignment() {
        let vars: Vec<Variable> = (1..=4).map(var).collect();
        for lits in all_clauses(4) {
            let c = Clause::from_literals(lits);
            if !c.is_tautology() {
                continue;
            }
            for mask in 0..16 {
                assert!(c.evaluate(&Assignment::from_mask(&vars, mask)).unwrap());
            }
        }
    }

    #[test]
    fn falsified_clause_subsets_are_falsified() {
        let vars: Vec<Variable> = (1..=4).map(var).collect();
        for lits in all_clauses(4) {
            let c = Clause::from_literals(lits.clone());
            for mask in 0..16u64 {
                let a = Assignment::from_mask(&vars, mask);
                if c.evaluate(&a).unwrap() {
                    continue;
                }
                for sub in 0..(1u32 << lits.len()) {
                    let s = Clause::from_literals(
                        lits.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).map(|(_, &l)| l),
                    );
                    assert!(!s.evaluate(&a).unwrap());
                }
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_exhaustive() {
        for lits in all_clauses(3) {
            let c = Clause::normalize(lits.clone());
            let again = Clause::normalize(c.literals().to_vec());
            assert_eq!(c, again);
        }
    }
}
