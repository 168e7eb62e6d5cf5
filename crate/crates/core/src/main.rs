use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cnftree::bench::{bench_fn, to_csv, BenchError};
use cnftree::bounds::apply_bounds;
use cnftree::format::{FileFormat, Parsed};
use cnftree::gen::{gen_exhaustive, gen_fn, gen_random, RandomSpec};
use cnftree::oracle::{theorem_10_8_decide, truth_table_sat};
use cnftree::solver::{kumar_solve, EmptyFormulaPolicy, PruneSchedule, SatResult, SolveConfig, DEFAULT_NODE_LIMIT};
use cnftree::trace::trace;
use cnftree::verify::{verify, Suite, VerifyOptions, RANDOM_SUITE_MAX_VARS};
use cnftree::{Formula, SolveError};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_ERROR: u8 = 1;
const EXIT_RESOURCE: u8 = 2;

/// Environment override for the live-node guard.
const NODE_LIMIT_ENV: &str = "CNFTREE_NODE_LIMIT";

#[derive(Parser)]
#[command(name = "cnftree", version, about = "Clause-tree CNF-SAT workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a formula file (.cnf = DIMACS, .scnf = native). Exits 10 / 20.
    Solve(SolveArgs),
    /// Sweep the F_n family and write the blowup table as CSV.
    Bench(BenchArgs),
    /// Differential check of all deciders on the exhaustive or random suite.
    Verify(VerifyArgs),
    /// Report the cardinality and literal-count bounds for a formula file.
    Bounds { path: PathBuf },
    /// Write generated formulas.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Write one DOT file per insertion phase and prune.
    Trace(TraceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Kumar,
    TruthTable,
    Thm108,
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    PerClause,
    PostConstruction,
}

impl From<Schedule> for PruneSchedule {
    fn from(s: Schedule) -> PruneSchedule {
        match s {
            Schedule::PerClause => PruneSchedule::PerClause,
            Schedule::PostConstruction => PruneSchedule::PostConstruction,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EmptyPolicy {
    Accept,
    Reject,
}

#[derive(Args)]
struct SolveArgs {
    path: PathBuf,
    #[arg(long, value_enum, default_value = "kumar")]
    algo: Algo,
    #[arg(long, value_enum, default_value = "per-clause")]
    schedule: Schedule,
    #[arg(long, value_enum, default_value = "accept")]
    empty_policy: EmptyPolicy,
    /// Write verdict and counters as key=value lines.
    #[arg(long = "stats", alias = "stats-out")]
    stats: Option<PathBuf>,
    /// Live-node guard; overrides CNFTREE_NODE_LIMIT.
    #[arg(long)]
    node_limit: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fn,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "fn")]
    family: Family,
    #[arg(long, default_value_t = 2)]
    n_min: u32,
    #[arg(long, default_value_t = 18)]
    n_max: u32,
    #[arg(long, value_enum, default_value = "per-clause")]
    schedule: Schedule,
    /// Output path; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    node_limit: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "random")]
    mode: VerifyMode,
    #[arg(long, default_value_t = 4)]
    nvars: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The single clause {x1, ..., xn}.
    Fn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A seeded random formula.
    Random {
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        nclauses: usize,
        #[arg(long, default_value_t = 1)]
        min_width: usize,
        #[arg(long)]
        max_width: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tautologies: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every small formula, one file each.
    Exhaustive {
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        max_clauses: usize,
        #[arg(long)]
        out_dir: PathBuf,
        /// File extension, which selects the format.
        #[arg(long, default_value = "cnf")]
        ext: String,
    },
}

#[derive(Args)]
struct TraceArgs {
    path: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "per-clause")]
    schedule: Schedule,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_ERROR, message: message.into() }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_formula(path: &Path) -> Result<Formula, Failure> {
    let format = FileFormat::from_path(path)
        .ok_or_else(|| Failure::usage(format!("{}: unknown extension (expected .cnf or .scnf)", path.display())))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let Parsed { formula, duplicates_collapsed } =
        format.parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if duplicates_collapsed > 0 {
        eprintln!("c collapsed {duplicates_collapsed} duplicate clause(s)");
    }
    Ok(formula)
}

fn write_formula(f: &Formula, out: Option<&Path>) -> Result<(), Failure> {
    let format = match out {
        Some(p) => FileFormat::from_path(p)
            .ok_or_else(|| Failure::usage(format!("{}: unknown extension (expected .cnf or .scnf)", p.display())))?,
        None => FileFormat::Dimacs,
    };
    let text = format.emit(f).map_err(|e| Failure::usage(e.to_string()))?;
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn node_limit(flag: Option<u64>) -> Result<Option<u64>, Failure> {
    let limit = match flag {
        Some(v) => v,
        None => match std::env::var(NODE_LIMIT_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("{NODE_LIMIT_ENV}: invalid value `{s}`")))?,
            Err(_) => DEFAULT_NODE_LIMIT,
        },
    };
    if limit == 0 {
        return Err(Failure::usage("node limit must be at least 1"));
    }
    Ok(Some(limit))
}

fn solve_error(e: SolveError) -> Failure {
    match e {
        SolveError::ResourceLimitExceeded { .. } => Failure { code: EXIT_RESOURCE, message: e.to_string() },
        SolveError::Tree(_) => Failure::usage(e.to_string()),
    }
}

fn cmd_solve(args: SolveArgs) -> CmdResult {
    let f = read_formula(&args.path)?;
    let verdict = match args.algo {
        Algo::Kumar => {
            let cfg = SolveConfig {
                prune_schedule: args.schedule.into(),
                empty_formula_policy: match args.empty_policy {
                    EmptyPolicy::Accept => EmptyFormulaPolicy::Accept,
                    EmptyPolicy::Reject => EmptyFormulaPolicy::Reject,
                },
                node_limit: node_limit(args.node_limit)?,
            };
            kumar_solve(&f, &cfg).map_err(solve_error)?
        }
        Algo::TruthTable => truth_table_sat(&f).map_err(|e| Failure::usage(e.to_string()))?,
        Algo::Thm108 => theorem_10_8_decide(&f).map_err(|e| Failure::usage(e.to_string()))?,
    };
    println!("s {}", verdict.result);
    if let Some(w) = &verdict.witness {
        println!("witness {w}");
    }
    if let Some(path) = &args.stats {
        fs::write(path, verdict.to_key_value()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(match verdict.result {
        SatResult::Satisfiable => EXIT_SAT,
        SatResult::Unsatisfiable => EXIT_UNSAT,
    })
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let Family::Fn = args.family;
    let rows = bench_fn(args.n_min, args.n_max, args.schedule.into(), node_limit(args.node_limit)?).map_err(|e| match e {
        BenchError::Solve(s) => solve_error(s),
        other => Failure::usage(other.to_string()),
    })?;
    let csv = to_csv(&rows);
    match &args.csv {
        Some(p) => fs::write(p, csv).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let suite = match args.mode {
        VerifyMode::Exhaustive => Suite::Exhaustive,
        VerifyMode::Random => {
            if args.nvars == 0 || args.nvars > RANDOM_SUITE_MAX_VARS {
                return Err(Failure::usage(format!("--nvars must be in 1..={RANDOM_SUITE_MAX_VARS}")));
            }
            Suite::Random { nvars: args.nvars, samples: args.samples, seed: args.seed }
        }
    };
    let report = verify(&suite, VerifyOptions { inject_fault: args.inject_fault });
    let text = report.to_text();
    match &args.report {
        Some(p) => fs::write(p, &text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    eprintln!("c checked {} formulas, {} disagreement(s)", report.checked, report.disagreements.len());
    Ok(if report.is_clean() { 0 } else { EXIT_ERROR })
}

fn cmd_bounds(path: &Path) -> CmdResult {
    let f = read_formula(path)?;
    let stripped = f.without_tautologies();
    if stripped.len() != f.len() {
        eprintln!("c ignored {} tautology clause(s)", f.len() - stripped.len());
    }
    let report = apply_bounds(&stripped).map_err(|e| Failure::usage(e.to_string()))?;
    println!("{}", report.summary());
    print!("{}", report.to_key_value());
    Ok(0)
}

fn cmd_gen(cmd: GenCommand) -> CmdResult {
    match cmd {
        GenCommand::Fn { n, out } => {
            let member = gen_fn(n).map_err(|e| Failure::usage(e.to_string()))?;
            if !member.in_family {
                eprintln!("c note: n = 1 is not a member of the family (requires n > 1)");
            }
            write_formula(&member.formula, out.as_deref())?;
        }
        GenCommand::Random { nvars, nclauses, min_width, max_width, seed, tautologies, out } => {
            let spec = RandomSpec { nvars, nclauses, width: min_width..=max_width, tautologies, seed };
            let f = gen_random(&spec).map_err(|e| Failure::usage(e.to_string()))?;
            write_formula(&f, out.as_deref())?;
        }
        GenCommand::Exhaustive { nvars, max_clauses, out_dir, ext } => {
            let formulas = gen_exhaustive(nvars, max_clauses).map_err(|e| Failure::usage(e.to_string()))?;
            fs::create_dir_all(&out_dir).map_err(|e| Failure::usage(format!("{}: {e}", out_dir.display())))?;
            let mut count = 0usize;
            for (i, f) in formulas.enumerate() {
                let path = out_dir.join(format!("{:06}.{ext}", i + 1));
                write_formula(&f, Some(&path))?;
                count += 1;
            }
            eprintln!("c wrote {count} formulas");
        }
    }
    Ok(0)
}

fn cmd_trace(args: TraceArgs) -> CmdResult {
    let f = read_formula(&args.path)?;
    let cfg = SolveConfig { prune_schedule: args.schedule.into(), node_limit: node_limit(None)?, ..SolveConfig::default() };
    let (frames, verdict) = trace(&f, &cfg).map_err(solve_error)?;
    fs::create_dir_all(&args.out_dir).map_err(|e| Failure::usage(format!("{}: {e}", args.out_dir.display())))?;
    for frame in &frames {
        let path = args.out_dir.join(frame.file_name());
        fs::write(&path, &frame.dot).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    println!("s {}", verdict.result);
    if let Some(w) = &verdict.witness {
        println!("witness {w}");
    }
    eprintln!("c wrote {} frames to {}", frames.len(), args.out_dir.display());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds { path } => cmd_bounds(&path),
        Command::Gen(g) => cmd_gen(g),
        Command::Trace(a) => cmd_trace(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
