//! Blowup sweep over the single-clause family and its CSV table.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::SolveError;
use crate::gen::gen_fn;
use crate::solver::{kumar_run, PruneSchedule, SatResult, SolveConfig};

pub const BENCH_MAX_N: u32 = 22;

pub const CSV_HEADER: &str = "n,peak_nodes_incl_root,nodes_excl_root,nodes_deleted,prune_pointer_visits,open_paths_final,verdict,wall_time_ns,visits_ratio";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: u32,
    pub peak_nodes_incl_root: u64,
    /// Live nodes at the end of the run, root excluded.
    pub nodes_excl_root: u64,
    pub nodes_deleted: u64,
    pub prune_pointer_visits: u64,
    pub open_paths_final: u64,
    pub verdict: SatResult,
    pub wall_time_ns: u128,
    /// `visits(n) / visits(n-1)`; `None` on the first row.
    pub visits_ratio: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("n range {n_min}..={n_max} is invalid (need 1 <= n_min <= n_max <= {BENCH_MAX_N})")]
    Range { n_min: u32, n_max: u32 },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

pub fn bench_fn(n_min: u32, n_max: u32, schedule: PruneSchedule, node_limit: Option<u64>) -> Result<Vec<BenchRow>, BenchError> {
    if n_min < 1 || n_min > n_max || n_max > BENCH_MAX_N {
        return Err(BenchError::Range { n_min, n_max });
    }
    let cfg = SolveConfig { prune_schedule: schedule, node_limit, ..SolveConfig::default() };
    let mut rows: Vec<BenchRow> = Vec::new();
    for n in n_min..=n_max {
        let f = gen_fn(n).expect("n >= 1").formula;
        let start = Instant::now();
        let run = kumar_run(&f, &cfg)?;
        let wall_time_ns = start.elapsed().as_nanos();
        let c = run.tree.counters();
        let visits_ratio = rows.last().map(|prev| c.prune_pointer_visits as f64 / prev.prune_pointer_visits as f64);
        rows.push(BenchRow {
            n,
            peak_nodes_incl_root: c.peak_nodes_incl_root,
            nodes_excl_root: c.current_nodes_excl_root(),
            nodes_deleted: c.nodes_deleted,
            prune_pointer_visits: c.prune_pointer_visits,
            open_paths_final: run.tree.open_pointer_count(),
            verdict: run.verdict.result,
            wall_time_ns,
            visits_ratio,
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let ratio = r.visits_ratio.map(|x| format!("{x:.6}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.peak_nodes_incl_root,
            r.nodes_excl_root,
            r.nodes_deleted,
            r.prune_pointer_visits,
            r.open_paths_final,
            r.verdict,
            r.wall_time_ns,
            ratio
        );
    }
    out
}
