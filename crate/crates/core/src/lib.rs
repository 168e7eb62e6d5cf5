//! Instrumented clause-tree CNF-SAT procedure with brute-force oracles,
//! bound filters and a blowup benchmark over the family
//! `F_n = {{x1, ..., xn}}`.

pub mod bench;
pub mod bounds;
pub mod error;
pub mod format;
pub mod formula;
pub mod gen;
pub mod oracle;
pub mod solver;
pub mod trace;
pub mod tree;
pub mod verify;

pub use error::{BoundsError, EmitError, EvalError, GuardError, ParseError, SolveError, TreeError};
pub use formula::{Assignment, Clause, Formula, Literal, Token, Variable};
pub use solver::{
    extract_witness, kumar_run, kumar_solve, EmptyFormulaPolicy, PruneSchedule, SatResult, SolveConfig, Verdict,
};
pub use tree::{ClauseTree, Counters, PointerState};
