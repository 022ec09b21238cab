use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// `v = ωh` outside the range where the phase-fitted coefficients exist.
    #[error("v = {v} is outside the phase-fitted domain (0, {upper})")]
    Domain { v: f64, upper: f64 },

    #[error("phase-lag denominator vanished at v = {v}")]
    DegenerateDenominator { v: f64 },

    /// Every phase-lag sample fell below the noise threshold: infinite order.
    #[error("phase lag is identically zero over the sample window (infinite order)")]
    IdenticallyZero,

    #[error("step {h} too large: {needed} steps of it exceed the interval length {length}")]
    StepTooLarge { h: f64, needed: usize, length: f64 },

    #[error("implicit corrector did not converge at x = {x} after {iterations} iterations")]
    CorrectorDiverged { x: f64, iterations: usize },

    #[error("linear implicit solve is singular at x = {x} (denominator {denominator:e})")]
    SingularLinearSolve { x: f64, denominator: f64 },

    /// The two asymptotic sample points are (nearly) a half-wavelength multiple apart.
    #[error("phase-shift sample points {i} and {j} are degenerate for this wavenumber")]
    DegenerateSample { i: usize, j: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
