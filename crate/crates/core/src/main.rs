use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oscint::bench::{self, SweepConfig};
use oscint::problems::{problem_by_id, Metric, PROBLEM_IDS};
use oscint::{Error, MethodSpec};

#[derive(Parser)]
#[command(name = "oscint", version, about = "Symmetric eight-step methods for oscillatory IVPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a method x step-count sweep on one problem and write CSV.
    Sweep(SweepArgs),
    /// Check coefficients, algebraic orders and phase-lag orders.
    Verify,
    /// List registered methods and problems.
    List,
}

#[derive(Args)]
struct SweepArgs {
    /// key=value file; command-line flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// Comma-separated method ids.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Comma-separated, strictly increasing step counts.
    #[arg(long, value_delimiter = ',')]
    steps: Option<Vec<usize>>,
    /// max | endpoint | phase-shift
    #[arg(long)]
    metric: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write wall_seconds as 0 so reruns give identical files.
    #[arg(long)]
    no_timing: bool,
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig, Error> {
    let base = args.config.as_deref().map(SweepConfig::from_file).transpose()?;
    let metric = args
        .metric
        .as_deref()
        .map(|m| Metric::parse(m).ok_or_else(|| Error::Config(format!("unknown metric '{m}'"))))
        .transpose()?;
    let problem = args
        .problem
        .clone()
        .or_else(|| base.as_ref().map(|b| b.problem.clone()))
        .ok_or_else(|| Error::Config("--problem is required".into()))?;
    let methods = args
        .methods
        .clone()
        .or_else(|| base.as_ref().map(|b| b.methods.clone()))
        .ok_or_else(|| Error::Config("--methods is required".into()))?;
    let steps = args
        .steps
        .clone()
        .or_else(|| base.as_ref().map(|b| b.n_steps.clone()));
    let metric = metric.or_else(|| base.as_ref().map(|b| b.metric));
    let out = args
        .out
        .clone()
        .or_else(|| base.as_ref().and_then(|b| b.out.clone()));
    SweepConfig::resolve(problem, methods, steps, metric, out)
}

fn sweep(args: SweepArgs) -> ExitCode {
    let config = match sweep_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut rows = match bench::run_sweep(&config) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if args.no_timing {
        rows.iter_mut().for_each(|r| r.wall_seconds = 0.0);
    }
    let written = match &config.out {
        Some(path) => bench::write_csv(&rows, path),
        None => bench::write_csv_to(&rows, std::io::stdout().lock()).map_err(|e| Error::Io {
            path: "<stdout>".into(),
            source: e.into(),
        }),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let failed: Vec<_> = rows.iter().filter(|r| r.is_failed()).collect();
    for r in &failed {
        eprintln!(
            "failed: {} n_steps={}: {}",
            r.method,
            r.n_steps,
            r.note.as_deref().unwrap_or("")
        );
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verify() -> ExitCode {
    let report = bench::verify_report();
    for c in &report {
        println!("{c}");
    }
    if report.iter().all(|c| c.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn list() -> ExitCode {
    println!("methods:");
    for m in MethodSpec::builtin() {
        let kind = if m.is_frequency_dependent() {
            "frequency-dependent"
        } else {
            "constant"
        };
        println!("  {:<14} {}-step, {} stage(s), {kind}", m.name(), m.steps(), m.stages());
    }
    println!("problems:");
    for id in PROBLEM_IDS {
        let entry = problem_by_id(id).expect("registered");
        let steps: Vec<String> = entry.default_steps.iter().map(|n| n.to_string()).collect();
        println!(
            "  {:<16} metric={:<12} steps={}",
            id,
            entry.default_metric.id(),
            steps.join(",")
        );
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Verify => verify(),
        Command::List => list(),
    }
}
