use thiserror::Error;

use crate::formula::Variable;
use crate::tree::Counters;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment has no value for {0}")]
    Unassigned(Variable),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
pub struct ParseError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column: None, message: message.into() }
    }

    pub(crate) fn at_col(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column: Some(column), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("clause {index} is a constant-only tautology and cannot be written as DIMACS")]
    ConstantInDimacs { index: usize },
}

/// Contract violations on [`crate::tree::ClauseTree`] operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("{0} is already in the tree")]
    AlreadyInserted(Variable),
    #[error("{0} is not in the tree")]
    NotInserted(Variable),
    #[error("tree has no open pointers")]
    NoOpenPointers,
    #[error("cannot prune with a null or tautology clause")]
    DegenerateClause,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("live node count would reach {requested}, above the limit of {limit}")]
    ResourceLimitExceeded { limit: u64, requested: u64, counters: Box<Counters> },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// An explicit refusal when an exponential procedure is asked to run above
/// its size guard.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{operation}: {actual} exceeds the limit of {limit}")]
pub struct GuardError {
    pub operation: &'static str,
    pub limit: usize,
    pub actual: usize,
}

impl GuardError {
    pub(crate) fn check(operation: &'static str, limit: usize, actual: usize) -> Result<(), GuardError> {
        if actual > limit {
            Err(GuardError { operation, limit, actual })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bounds require a tautology-free formula (clause {index} is a tautology)")]
    TautologyPresent { index: usize },
}
