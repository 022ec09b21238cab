//! Method × step-count sweeps scored by `-log10(error)` against `steps × stages`.

mod config;
mod report;
mod table;

use std::time::Instant;

use rayon::prelude::*;

pub use config::SweepConfig;
pub use report::{verify_report, Check};
pub use table::{read_csv, write_csv, write_csv_to, CSV_HEADER};

use crate::error::{Error, Result};
use crate::integrator::{integrate, IvpProblem, Trajectory};
use crate::methods::MethodSpec;
use crate::problems::{problem_by_id, resonance_phase_shift, Metric, ProblemEntry};

/// Errors below this are reported at the floor, capping accuracy at 15.
pub const ERROR_FLOOR: f64 = 1e-15;

/// Anything that can integrate a registered problem on a uniform grid.
pub trait Solver: Send + Sync {
    fn id(&self) -> &str;
    /// Function evaluations per step used for the work measure.
    fn stages(&self) -> u32;
    fn solve(&self, problem: &IvpProblem, n_steps: usize) -> Result<Trajectory>;
}

impl Solver for MethodSpec {
    fn id(&self) -> &str {
        self.name()
    }

    fn stages(&self) -> u32 {
        MethodSpec::stages(self)
    }

    fn solve(&self, problem: &IvpProblem, n_steps: usize) -> Result<Trajectory> {
        integrate(self, problem, n_steps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub method: String,
    pub problem: String,
    pub n_steps: usize,
    pub stages: u32,
    pub work: u64,
    /// NaN for failed runs.
    pub error: f64,
    pub accuracy: f64,
    pub wall_seconds: f64,
    /// Failure reason; `None` for successful runs.
    pub note: Option<String>,
}

impl RunResult {
    pub fn success(
        method: &str,
        problem: &str,
        n_steps: usize,
        stages: u32,
        error: f64,
        wall_seconds: f64,
    ) -> Self {
        Self {
            method: method.to_string(),
            problem: problem.to_string(),
            n_steps,
            stages,
            work: n_steps as u64 * stages as u64,
            error,
            accuracy: accuracy(error),
            wall_seconds,
            note: None,
        }
    }

    pub fn failure(
        method: &str,
        problem: &str,
        n_steps: usize,
        stages: u32,
        reason: impl Into<String>,
        wall_seconds: f64,
    ) -> Self {
        Self {
            note: Some(reason.into()),
            error: f64::NAN,
            accuracy: f64::NAN,
            ..Self::success(method, problem, n_steps, stages, 0.0, wall_seconds)
        }
    }

    pub fn is_failed(&self) -> bool {
        self.note.is_some()
    }

    pub fn log10_work(&self) -> f64 {
        (self.work as f64).log10()
    }
}

/// `-log10(max(error, 1e-15))`; NaN stays NaN.
pub fn accuracy(error: f64) -> f64 {
    if error.is_nan() {
        return f64::NAN;
    }
    -error.max(ERROR_FLOOR).log10()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Largest Euclidean distance between the trajectory and `exact` over the grid.
pub fn max_interval_error(traj: &Trajectory, exact: impl Fn(f64) -> Vec<f64>) -> f64 {
    traj.iter()
        .map(|(x, y)| distance(y, &exact(x)))
        .fold(0.0, f64::max)
}

/// Euclidean distance at the last grid point.
pub fn endpoint_error(traj: &Trajectory, exact: impl Fn(f64) -> Vec<f64>) -> f64 {
    traj.last().map_or(0.0, |(x, y)| distance(y, &exact(x)))
}

/// Checks that `metric` can be computed for `entry`.
pub fn check_metric(entry: &ProblemEntry, metric: Metric) -> Result<()> {
    match metric {
        Metric::MaxError | Metric::Endpoint if !entry.problem.has_exact() => Err(Error::Config(
            format!("{}: metric {} needs an exact solution", entry.id, metric.id()),
        )),
        Metric::PhaseShift if entry.resonance.is_none() => Err(Error::Config(format!(
            "{}: phase-shift metric needs a resonance problem",
            entry.id
        ))),
        _ => Ok(()),
    }
}

/// Scores one trajectory.
pub fn evaluate(entry: &ProblemEntry, metric: Metric, traj: &Trajectory) -> Result<f64> {
    check_metric(entry, metric)?;
    let exact = |x| entry.problem.exact(x).expect("checked above");
    match metric {
        Metric::MaxError => Ok(max_interval_error(traj, exact)),
        Metric::Endpoint => Ok(endpoint_error(traj, exact)),
        Metric::PhaseShift => {
            let case = entry.resonance.expect("checked above");
            Ok(resonance_phase_shift(traj, &case)?.abs_error)
        }
    }
}

/// One integration, never failing: errors become a failed row.
pub fn run_once(
    solver: &dyn Solver,
    entry: &ProblemEntry,
    n_steps: usize,
    metric: Metric,
) -> RunResult {
    let start = Instant::now();
    let outcome = solver
        .solve(&entry.problem, n_steps)
        .and_then(|traj| evaluate(entry, metric, &traj));
    let wall = start.elapsed().as_secs_f64();
    match outcome {
        Ok(error) if error.is_finite() => {
            RunResult::success(solver.id(), entry.id, n_steps, solver.stages(), error, wall)
        }
        Ok(error) => RunResult::failure(
            solver.id(),
            entry.id,
            n_steps,
            solver.stages(),
            format!("non-finite error {error}"),
            wall,
        ),
        Err(e) => RunResult::failure(
            solver.id(),
            entry.id,
            n_steps,
            solver.stages(),
            e.to_string(),
            wall,
        ),
    }
}

/// Runs every `(solver, n_steps)` pair in parallel, sorted by
/// `(method id, n_steps)`.
pub fn run_grid(
    solvers: &[&dyn Solver],
    entry: &ProblemEntry,
    n_steps: &[usize],
    metric: Metric,
) -> Vec<RunResult> {
    let jobs: Vec<(&dyn Solver, usize)> = solvers
        .iter()
        .flat_map(|s| n_steps.iter().map(move |&n| (*s, n)))
        .collect();
    let mut rows: Vec<RunResult> = jobs
        .into_par_iter()
        .map(|(s, n)| run_once(s, entry, n, metric))
        .collect();
    rows.sort_by(|a, b| (&a.method, a.n_steps).cmp(&(&b.method, b.n_steps)));
    rows
}

/// Resolves the registered problem and methods of `config` and runs the grid.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<RunResult>> {
    let entry = problem_by_id(&config.problem)
        .ok_or_else(|| Error::Config(format!("unknown problem '{}'", config.problem)))?;
    check_metric(&entry, config.metric)?;
    let methods = config
        .methods
        .iter()
        .map(|id| {
            MethodSpec::by_name(id).ok_or_else(|| Error::Config(format!("unknown method '{id}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    let solvers: Vec<&dyn Solver> = methods.iter().map(|m| m as &dyn Solver).collect();
    Ok(run_grid(&solvers, &entry, &config.n_steps, config.metric))
}
