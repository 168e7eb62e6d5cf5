//! Driver for the clause-tree decision procedure.
//!
//! Clauses are processed in input order. A null clause rejects, tautology
//! clauses are skipped, and every variable of a clause that is not yet in
//! the tree is inserted in ascending index order (rejecting when no open
//! pointer is left). The tree is then pruned by the clause, either right
//! away or after the whole tree has been built. The formula is accepted iff
//! an open pointer survives.

use std::fmt;
use std::str::FromStr;

use crate::error::{SolveError, TreeError};
use crate::formula::{Assignment, Formula};
use crate::tree::{ClauseTree, Counters};

/// Default resource guard: 2^26 live nodes.
pub const DEFAULT_NODE_LIMIT: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PruneSchedule {
    /// Prune right after each clause's variables are inserted.
    #[default]
    PerClause,
    /// Build the whole tree first, then prune once per clause in input order.
    PostConstruction,
}

impl fmt::Display for PruneSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PruneSchedule::PerClause => "per-clause",
            PruneSchedule::PostConstruction => "post-construction",
        })
    }
}

impl FromStr for PruneSchedule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-clause" | "per_clause" => Ok(PruneSchedule::PerClause),
            "post-construction" | "post_construction" => Ok(PruneSchedule::PostConstruction),
            _ => Err(format!("unknown schedule `{s}`")),
        }
    }
}

/// What to answer for the formula with no clauses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EmptyFormulaPolicy {
    /// The tree's root pointer is open, so the literal procedure accepts.
    #[default]
    Accept,
    Reject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub prune_schedule: PruneSchedule,
    pub empty_formula_policy: EmptyFormulaPolicy,
    /// Maximum number of live nodes, root included. `None` disables the guard.
    pub node_limit: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> SolveConfig {
        SolveConfig {
            prune_schedule: PruneSchedule::PerClause,
            empty_formula_policy: EmptyFormulaPolicy::Accept,
            node_limit: Some(DEFAULT_NODE_LIMIT),
        }
    }
}

impl SolveConfig {
    pub fn with_schedule(schedule: PruneSchedule) -> SolveConfig {
        SolveConfig { prune_schedule: schedule, ..SolveConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SatResult {
    Satisfiable,
    Unsatisfiable,
}

impl SatResult {
    pub fn is_sat(self) -> bool {
        self == SatResult::Satisfiable
    }
}

impl fmt::Display for SatResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SatResult::Satisfiable => "SATISFIABLE",
            SatResult::Unsatisfiable => "UNSATISFIABLE",
        })
    }
}

/// Which procedure produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Procedure {
    ClauseTree(PruneSchedule),
    TruthTable,
    FullyPopulatedSearch,
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Procedure::ClauseTree(s) => write!(f, "kumar/{s}"),
            Procedure::TruthTable => f.write_str("truth-table"),
            Procedure::FullyPopulatedSearch => f.write_str("thm108"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub result: SatResult,
    pub witness: Option<Assignment>,
    /// Present for clause-tree runs only.
    pub counters: Option<Counters>,
    pub procedure: Procedure,
}

impl Verdict {
    /// Flat `key=value` record.
    pub fn to_key_value(&self) -> String {
        let mut out = format!("result={}\nprocedure={}\n", self.result, self.procedure);
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness={w}\n"));
        }
        if let Some(c) = &self.counters {
            out.push_str(&c.to_key_value());
        }
        out
    }
}

/// Tree events observable while solving, used for tracing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    /// All variables of clause `clause_index` (1-based) are in the tree.
    PostInsert { clause_index: usize },
    /// The tree has been pruned by clause `clause_index`.
    PostPrune { clause_index: usize },
}

/// Final state of a clause-tree run.
#[derive(Clone, Debug)]
pub struct KumarRun {
    pub verdict: Verdict,
    pub tree: ClauseTree,
}

pub fn kumar_solve(f: &Formula, cfg: &SolveConfig) -> Result<Verdict, SolveError> {
    kumar_run(f, cfg).map(|r| r.verdict)
}

pub fn kumar_run(f: &Formula, cfg: &SolveConfig) -> Result<KumarRun, SolveError> {
    kumar_run_traced(f, cfg, |_, _| {})
}

/// Runs the procedure, calling `observe` after every insertion phase and
/// every prune.
pub fn kumar_run_traced<O>(f: &Formula, cfg: &SolveConfig, mut observe: O) -> Result<KumarRun, SolveError>
where
    O: FnMut(TraceEvent, &ClauseTree),
{
    let mut tree = ClauseTree::new();
    let procedure = Procedure::ClauseTree(cfg.prune_schedule);
    let reject = |tree: ClauseTree| KumarRun {
        verdict: Verdict {
            result: SatResult::Unsatisfiable,
            witness: None,
            counters: Some(tree.counters().clone()),
            procedure,
        },
        tree,
    };

    if f.is_empty() && cfg.empty_formula_policy == EmptyFormulaPolicy::Reject {
        return Ok(reject(tree));
    }

    let mut pending = Vec::new();
    for (i, clause) in f.clauses().iter().enumerate() {
        let index = i + 1;
        if clause.is_null() {
            return Ok(reject(tree));
        }
        if clause.is_tautology() {
            continue;
        }
        for v in clause.variables() {
            if tree.contains_variable(v) {
                continue;
            }
            if tree.open_pointer_count() == 0 {
                return Ok(reject(tree));
            }
            if let Some(limit) = cfg.node_limit {
                let requested = tree.node_count_incl_root() + tree.open_pointer_count();
                if requested > limit {
                    return Err(SolveError::ResourceLimitExceeded {
                        limit,
                        requested,
                        counters: Box::new(tree.counters().clone()),
                    });
                }
            }
            tree.insert_variable(v)?;
        }
        observe(TraceEvent::PostInsert { clause_index: index }, &tree);
        match cfg.prune_schedule {
            PruneSchedule::PerClause => {
                tree.prune(clause)?;
                tree.counters_mut().record_snapshot(index);
                observe(TraceEvent::PostPrune { clause_index: index }, &tree);
            }
            PruneSchedule::PostConstruction => pending.push(index),
        }
    }
    for index in pending {
        tree.prune(&f.clauses()[index - 1])?;
        tree.counters_mut().record_snapshot(index);
        observe(TraceEvent::PostPrune { clause_index: index }, &tree);
    }

    if tree.open_pointer_count() == 0 {
        return Ok(reject(tree));
    }
    let witness = extract_witness(&tree, f)?;
    Ok(KumarRun {
        verdict: Verdict {
            result: SatResult::Satisfiable,
            witness: Some(witness),
            counters: Some(tree.counters().clone()),
            procedure,
        },
        tree,
    })
}

/// Falsifies every literal of the canonically first open path. Variables of
/// `f` that are not on the path are set to false.
pub fn extract_witness(tree: &ClauseTree, f: &Formula) -> Result<Assignment, TreeError> {
    let path = tree.first_open_path().ok_or(TreeError::NoOpenPointers)?;
    let mut a: Assignment = f.variables().iter().map(|&v| (v, false)).collect();
    for l in path.literals() {
        a.set(l.var(), !l.is_positive());
    }
    Ok(a)
}
