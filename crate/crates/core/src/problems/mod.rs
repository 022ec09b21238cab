//! Oscillatory benchmark problems and resonance phase shifts.

mod scattering;

use std::f64::consts::PI;
use std::sync::Arc;

pub use scattering::{
    phase_shift, ASYMPTOTIC_X, resonance_phase_shift, woods_saxon, PhaseShiftResult, ResonanceCase,
    WoodsSaxonParams,
};

use crate::integrator::{IvpProblem, LinearForm};

/// End of the interval shared by the four orbital-type problems.
pub const LONG_INTERVAL: f64 = 1000.0 * PI;

pub const FRANCO_EPSILON: f64 = 0.001;
pub const FRANCO_PSI: f64 = 0.01;

/// Almost periodic orbit `u'' + u = ε cos(ψx)`, `v'' + v = ε sin(ψx)`, i.e.
/// the real form of `y'' + y = ε e^{iψx}`, `y(0) = 1`, `y'(0) = i`.
pub fn franco_palacios() -> IvpProblem {
    let (eps, psi) = (FRANCO_EPSILON, FRANCO_PSI);
    let forcing = move |x: f64, out: &mut [f64]| {
        out[0] = eps * (psi * x).cos();
        out[1] = eps * (psi * x).sin();
    };
    IvpProblem::new(
        "franco-palacios",
        (0.0, LONG_INTERVAL),
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        Arc::new(move |x, y: &[f64], out: &mut [f64]| {
            forcing(x, out);
            out[0] -= y[0];
            out[1] -= y[1];
        }),
    )
    .expect("valid problem")
    .with_exact(Arc::new(move |x, out: &mut [f64]| {
        let d = 1.0 - psi * psi;
        out[0] = (1.0 - eps - psi * psi) / d * x.cos() + eps / d * (psi * x).cos();
        out[1] = (1.0 - eps * psi - psi * psi) / d * x.sin() + eps / d * (psi * x).sin();
    }))
    .with_frequency(Arc::new(|_, _| 1.0))
    .with_linear_form(LinearForm {
        lambda: Arc::new(|_| -1.0),
        forcing: Some(Arc::new(forcing)),
    })
}

/// `y'' = -100 y + 99 sin t` with solution `sin t + sin 10t + cos 10t`.
pub fn inhomogeneous() -> IvpProblem {
    IvpProblem::new(
        "inhomogeneous",
        (0.0, LONG_INTERVAL),
        vec![1.0],
        vec![11.0],
        Arc::new(|x, y: &[f64], out: &mut [f64]| out[0] = -100.0 * y[0] + 99.0 * x.sin()),
    )
    .expect("valid problem")
    .with_exact(Arc::new(|x, out: &mut [f64]| {
        out[0] = x.sin() + (10.0 * x).sin() + (10.0 * x).cos()
    }))
    .with_frequency(Arc::new(|_, _| 10.0))
    .with_linear_form(LinearForm {
        lambda: Arc::new(|_| -100.0),
        forcing: Some(Arc::new(|x, out: &mut [f64]| out[0] = 99.0 * x.sin())),
    })
}

/// Circular Kepler orbit. The frequency estimate is `(y² + z²)^(-3/4)`.
pub fn two_body() -> IvpProblem {
    IvpProblem::new(
        "two-body",
        (0.0, LONG_INTERVAL),
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        Arc::new(|_, y: &[f64], out: &mut [f64]| {
            let r2 = y[0] * y[0] + y[1] * y[1];
            let inv_r3 = 1.0 / (r2 * r2.sqrt());
            out[0] = -y[0] * inv_r3;
            out[1] = -y[1] * inv_r3;
        }),
    )
    .expect("valid problem")
    .with_exact(Arc::new(|x, out: &mut [f64]| {
        out[0] = x.cos();
        out[1] = x.sin();
    }))
    .with_frequency(Arc::new(|_, y: &[f64]| {
        (y[0] * y[0] + y[1] * y[1]).powf(-0.75)
    }))
}

pub const DUFFING_Y0: f64 = 0.200426728067;
/// `(amplitude, angular frequency)` of the reference cosine series; the
/// truncation leaves an ODE residual near `1e-10`.
pub const DUFFING_SERIES: [(f64, f64); 4] = [
    (0.200179477536, 1.01),
    (2.46946143e-4, 3.03),
    (3.04014e-7, 5.05),
    (3.74e-10, 7.07),
];

/// Forced Duffing oscillator `y'' = -y - y³ + 0.002 cos(1.01 t)`.
pub fn duffing() -> IvpProblem {
    IvpProblem::new(
        "duffing",
        (0.0, LONG_INTERVAL),
        vec![DUFFING_Y0],
        vec![0.0],
        Arc::new(|x, y: &[f64], out: &mut [f64]| {
            out[0] = -y[0] - y[0] * y[0] * y[0] + 0.002 * (1.01 * x).cos()
        }),
    )
    .expect("valid problem")
    .with_exact(Arc::new(|x, out: &mut [f64]| {
        out[0] = DUFFING_SERIES
            .iter()
            .map(|(amp, w)| amp * (w * x).cos())
            .sum();
    }))
    .with_frequency(Arc::new(|_, _| 1.0))
}

/// Radial Schrödinger equation with `l = 0` on `[0, 15]`:
/// `y'' = (V(x) - E) y`, `y(0) = 0`.
///
/// Starting values are scaled so that `y(h) = h`. The fitted frequency is
/// `√(E - 50)` for `x <= 6.5` and `√E` beyond.
pub fn schrodinger_problem(case: ResonanceCase) -> IvpProblem {
    let params = WoodsSaxonParams::default();
    let energy = case.energy();
    let inner = (energy - 50.0).sqrt();
    let outer = energy.sqrt();
    IvpProblem::new(
        format!("schrodinger-{}", case.label()),
        (0.0, 15.0),
        vec![0.0],
        vec![1.0],
        Arc::new(move |x, y: &[f64], out: &mut [f64]| {
            out[0] = (woods_saxon(x, &params) - energy) * y[0]
        }),
    )
    .expect("valid problem")
    .with_frequency(Arc::new(move |x, _| if x <= 6.5 { inner } else { outer }))
    .with_linear_form(LinearForm {
        lambda: Arc::new(move |x| woods_saxon(x, &params) - energy),
        forcing: None,
    })
    .with_unit_slope_start()
}

/// How a run on a problem is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Largest Euclidean error over the grid.
    MaxError,
    /// Euclidean error at the last grid point.
    Endpoint,
    /// Distance of the resonance phase shift from `±π/2`.
    PhaseShift,
}

impl Metric {
    pub fn id(&self) -> &'static str {
        match self {
            Metric::MaxError => "max",
            Metric::Endpoint => "endpoint",
            Metric::PhaseShift => "phase-shift",
        }
    }

    pub fn parse(s: &str) -> Option<Metric> {
        match s {
            "max" => Some(Metric::MaxError),
            "endpoint" => Some(Metric::Endpoint),
            "phase-shift" => Some(Metric::PhaseShift),
            _ => None,
        }
    }
}

/// A registered benchmark problem.
#[derive(Debug, Clone)]
pub struct ProblemEntry {
    pub id: &'static str,
    pub problem: IvpProblem,
    pub resonance: Option<ResonanceCase>,
    pub default_metric: Metric,
    /// Step counts used when a sweep does not specify any.
    pub default_steps: Vec<usize>,
}

pub const PROBLEM_IDS: [&str; 7] = [
    "franco-palacios",
    "inhomogeneous",
    "two-body",
    "duffing",
    "schrodinger-989",
    "schrodinger-341",
    "schrodinger-163",
];

fn doubling(start: usize, count: u32) -> Vec<usize> {
    (0..count).map(|j| start << j).collect()
}

/// Fitted-frequency targets `v = √E h` of the default resonance grid.
pub const RESONANCE_V: [f64; 4] = [0.8, 0.7, 0.6, 0.5];

/// Smallest step count with `√E h <= v` on `[0, 15]` that puts
/// [`scattering::ASYMPTOTIC_X`] on a grid node (a multiple of 15).
pub fn resonance_steps(case: &ResonanceCase, v: f64) -> usize {
    let n = (15.0 * case.wavenumber() / v).ceil() as usize;
    n.div_ceil(15) * 15
}

pub fn problem_by_id(id: &str) -> Option<ProblemEntry> {
    let long = |problem: IvpProblem, id, steps| ProblemEntry {
        id,
        problem,
        resonance: None,
        default_metric: Metric::MaxError,
        default_steps: steps,
    };
    let resonance = |id, case: ResonanceCase| ProblemEntry {
        id,
        problem: schrodinger_problem(case),
        resonance: Some(case),
        default_metric: Metric::PhaseShift,
        default_steps: RESONANCE_V.iter().map(|&v| resonance_steps(&case, v)).collect(),
    };
    // Default grids start where all three bundled methods are stable and stop
    // before the new methods reach their roundoff floor.
    Some(match id {
        "franco-palacios" => long(franco_palacios(), "franco-palacios", doubling(4000, 4)),
        "inhomogeneous" => long(inhomogeneous(), "inhomogeneous", doubling(64000, 3)),
        "two-body" => long(two_body(), "two-body", doubling(6000, 3)),
        "duffing" => long(duffing(), "duffing", doubling(4000, 4)),
        "schrodinger-989" => resonance("schrodinger-989", ResonanceCase::E989),
        "schrodinger-341" => resonance("schrodinger-341", ResonanceCase::E341),
        "schrodinger-163" => resonance("schrodinger-163", ResonanceCase::E163),
        _ => return None,
    })
}
