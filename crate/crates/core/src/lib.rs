//! Optimized symmetric eight-step implicit methods for second-order initial
//! value problems with oscillating solutions.
//!
//! - [`methods`]: coefficients of the phase-fitted and maximal-order methods,
//!   the Numerov baseline, and phase-lag / algebraic-order analysis.
//! - [`integrator`]: fixed-step integration with starting values and the
//!   implicit corrector.
//! - [`problems`]: the oscillatory benchmark problems and resonance phase
//!   shifts for the Woods-Saxon potential.
//! - [`bench`]: work-precision sweeps and CSV output.

pub mod bench;
pub mod error;
pub mod integrator;
pub mod methods;
pub mod problems;

pub use error::{Error, Result};
pub use integrator::{integrate, IvpProblem, Trajectory};
pub use methods::MethodSpec;
