//! DOT snapshots of the clause tree after every insertion phase and prune.

use crate::error::SolveError;
use crate::formula::Formula;
use crate::solver::{kumar_run_traced, SolveConfig, TraceEvent, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    /// 1-based frame number.
    pub number: usize,
    pub event: TraceEvent,
    pub dot: String,
}

impl Frame {
    /// File name such as `002-prune-c1.dot`.
    pub fn file_name(&self) -> String {
        let (kind, clause) = match self.event {
            TraceEvent::PostInsert { clause_index } => ("insert", clause_index),
            TraceEvent::PostPrune { clause_index } => ("prune", clause_index),
        };
        format!("{:03}-{kind}-c{clause}.dot", self.number)
    }
}

pub fn trace(f: &Formula, cfg: &SolveConfig) -> Result<(Vec<Frame>, Verdict), SolveError> {
    let mut frames = Vec::new();
    let run = kumar_run_traced(f, cfg, |event, tree| {
        frames.push(Frame { number: frames.len() + 1, event, dot: tree.export_dot() });
    })?;
    Ok((frames, run.verdict))
}
