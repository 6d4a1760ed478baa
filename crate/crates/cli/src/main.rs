//! `svaudit` — audit Boolean-classifier attributions from the command line.
//!
//! Subcommands:
//!   analyze       full per-instance report (attributions, explanations, issues)
//!   scan          exhaustive audit of every function of a given arity
//!   compare       score an external attribution against the exact reference
//!   circuit-check parse a circuit file, check structure, materialize its table
//!
//! Exit codes: 0 success, 2 bad input (message on stderr), 3 internal
//! invariant violation.

mod report;

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use svaudit_core::{
    materialize, parse_attribution, parse_circuit, rank_features, rank_features_f64,
    scan_functions, shapley_all, wrong_pairs, BooleanFunction, ExplanationProblem, Point,
    RankingMode, ScanConfig, DEFAULT_MAX_ARITY, HARD_MAX_ARITY,
};

use report::{build_report, CircuitReport, CompareReport};

#[derive(Parser)]
#[command(
    name = "svaudit",
    version,
    about = "Audit Boolean classifiers: exact Shapley attributions, abductive and \
             contrastive explanations, and checks for misleading feature rankings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report attributions, explanations, and issues for one instance
    Analyze(AnalyzeArgs),
    /// Audit every Boolean function of a given arity and tally the issues
    Scan(ScanArgs),
    /// Count order inversions of an external attribution vs the exact one
    Compare(CompareArgs),
    /// Parse a circuit file, verify its structure, and print its table
    CircuitCheck(CircuitCheckArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Truth table as a bitstring of length 2^m, e.g. 01010011
    #[arg(long, conflicts_with = "circuit", required_unless_present = "circuit")]
    tt: Option<String>,
    /// Circuit file to materialize instead of --tt
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Instance to explain, as bits in feature order, e.g. 101 or 1,0,1
    #[arg(long)]
    instance: String,
    /// Also emit top/bottom-K ranking diagnostics for this K
    #[arg(long)]
    topk: Option<usize>,
    /// Ranking key for ordering features
    #[arg(long, value_enum, default_value_t = RankArg::Absolute)]
    ranking: RankArg,
}

#[derive(Args)]
struct ScanArgs {
    /// Number of variables m (functions scanned: all 2^2^m tables)
    #[arg(long)]
    vars: usize,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Ranking depth for the top/bottom-K counters
    #[arg(long)]
    topk: Option<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Also scan the two constant functions (they carry no issues either way)
    #[arg(long)]
    include_constants: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Truth table as a bitstring of length 2^m
    #[arg(long)]
    tt: String,
    /// Instance, as bits in feature order
    #[arg(long)]
    instance: String,
    /// CSV file of candidate scores: one "feature,score" line per feature
    #[arg(long)]
    attr: PathBuf,
}

#[derive(Args)]
struct CircuitCheckArgs {
    /// Circuit file to check
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankArg {
    Absolute,
    Signed,
}

impl From<RankArg> for RankingMode {
    fn from(a: RankArg) -> Self {
        match a {
            RankArg::Absolute => RankingMode::Absolute,
            RankArg::Signed => RankingMode::Signed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("error: internal invariant violated");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Scan(args) => scan(args),
        Command::Compare(args) => compare(args),
        Command::CircuitCheck(args) => circuit_check(args),
    }
}

/// Per-instance arity cap: analysis work grows as 4^m, so anything beyond
/// this is refused rather than left to run for hours. AUDIT_MAX_ARITY
/// raises or lowers the cap up to the hard limit.
fn arity_cap() -> Result<usize> {
    let raw = match std::env::var("AUDIT_MAX_ARITY") {
        Ok(raw) => raw,
        Err(std::env::VarError::NotPresent) => return Ok(DEFAULT_MAX_ARITY),
        Err(e) => return Err(e).context("reading AUDIT_MAX_ARITY"),
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("AUDIT_MAX_ARITY must be an integer, got {raw:?}"))?;
    if n == 0 || n > HARD_MAX_ARITY {
        bail!("AUDIT_MAX_ARITY must be between 1 and {HARD_MAX_ARITY}, got {n}");
    }
    Ok(n)
}

fn parse_point(text: &str) -> Result<Point> {
    let mut coords = Vec::new();
    for c in text.trim().chars() {
        match c {
            '0' => coords.push(false),
            '1' => coords.push(true),
            ',' | ' ' => {}
            other => bail!("instance may only contain bits and separators, got {other:?}"),
        }
    }
    if coords.is_empty() {
        bail!("instance is empty");
    }
    Ok(Point::new(&coords)?)
}

fn load_function(
    tt: Option<&str>,
    circuit: Option<&PathBuf>,
    cap: usize,
) -> Result<BooleanFunction> {
    let f = match (tt, circuit) {
        (Some(bits), None) => BooleanFunction::parse_tt(bits)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let c = parse_circuit(&text)?;
            materialize(&c, cap)?
        }
        _ => unreachable!("clap enforces exactly one function source"),
    };
    if f.arity() > cap {
        bail!(
            "function has {} variables but the per-instance cap is {} \
             (set AUDIT_MAX_ARITY to raise it, hard max {})",
            f.arity(),
            cap,
            HARD_MAX_ARITY
        );
    }
    Ok(f)
}

fn analyze(args: AnalyzeArgs) -> Result<()> {
    let cap = arity_cap()?;
    let f = load_function(args.tt.as_deref(), args.circuit.as_ref(), cap)?;
    let v = parse_point(&args.instance)?;
    let problem = ExplanationProblem::new(&f, v)?;
    let report = build_report(&problem, args.ranking.into(), args.topk)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn scan(args: ScanArgs) -> Result<()> {
    let mut cfg = ScanConfig::new(args.vars);
    cfg.workers = args.jobs;
    cfg.exclude_constants = !args.include_constants;
    if let Some(k) = args.topk {
        cfg.k = k;
    }
    let summary = scan_functions(&cfg)?;
    match args.out {
        OutFormat::Csv => print!("{}", summary.to_csv()),
        OutFormat::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
    }
    Ok(())
}

fn compare(args: CompareArgs) -> Result<()> {
    let cap = arity_cap()?;
    let f = load_function(Some(&args.tt), None, cap)?;
    let v = parse_point(&args.instance)?;
    let problem = ExplanationProblem::new(&f, v)?;
    let reference = shapley_all(&problem);

    let text = fs::read_to_string(&args.attr)
        .with_context(|| format!("reading {}", args.attr.display()))?;
    let candidate = parse_attribution(&text)?;

    let pairs = wrong_pairs(&candidate, reference.values())?;
    let report = CompareReport {
        wrong: pairs.wrong,
        total: pairs.total,
        reference_ranking: rank_features(reference.values(), RankingMode::Absolute),
        candidate_ranking: rank_features_f64(&candidate, RankingMode::Absolute),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn circuit_check(args: CircuitCheckArgs) -> Result<()> {
    let cap = arity_cap()?;
    let text = fs::read_to_string(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))?;
    let c = parse_circuit(&text)?;
    let decomposable = svaudit_core::check_decomposable(&c);
    let deterministic = svaudit_core::check_deterministic(&c, cap)?;
    let f = materialize(&c, cap)?;
    let report = CircuitReport {
        file: args.file.display().to_string(),
        arity: c.arity(),
        nodes: c.num_nodes(),
        decomposable,
        deterministic,
        constant: f.is_constant(),
        truth_table: f.render(),
        ones: f.ones(),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
