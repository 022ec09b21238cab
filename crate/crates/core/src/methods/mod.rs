//! Symmetric multistep methods for `y'' = f(x, y)` and their analysis.
//!
//! A symmetric `2k`-step method is stored by its half-vectors
//! `a = (a0, a1, .., ak)` and `b = (b0, b1, .., bk)`, where `aj`, `bj` weight
//! the node pair `±j`:
//!
//! ```text
//! sum_{i=-k..k} a_|i| y_{n+i} = h^2 sum_{i=-k..k} b_|i| f_{n+i}
//! ```

pub mod analysis;
pub mod coefficients;

use std::borrow::Cow;

use num_rational::Rational64;

pub use analysis::{
    algebraic_order, estimate_phase_lag_order, phase_lag_direct, phase_lag_value,
    stability_polys, PhaseLagReport, StabilityPolys,
};
pub use coefficients::{
    dependent_b_from_b4, fixed_b_coefficients, phase_fitted_b4, ACoefficients, BCoefficients,
};

use crate::error::{Error, Result};
use coefficients::ratio_to_f64;

pub const PHASE_FITTED: &str = "phase-fitted";
pub const FIXED: &str = "fixed";
pub const NUMEROV: &str = "numerov";

/// Source of the `b` half-vector.
#[derive(Debug, Clone, PartialEq)]
pub enum BProvider {
    /// Exact rational weights, independent of the step.
    Constant(Vec<Rational64>),
    /// Eight-step weights with `b4` chosen to cancel the phase lag at `v = ωh`
    /// and `b0..b3` tied to it by the order conditions.
    PhaseFitted,
}

#[derive(Debug, Clone)]
pub struct MethodSpec {
    name: String,
    a: Vec<Rational64>,
    a_f64: Vec<f64>,
    b: BProvider,
    b_f64: Option<Vec<f64>>,
    stages: u32,
}

impl MethodSpec {
    /// A symmetric `2k`-step method from its half-vectors. `a` must have at
    /// least two entries and a nonzero leading coefficient `ak`.
    pub fn symmetric(
        name: impl Into<String>,
        a: Vec<Rational64>,
        b: BProvider,
        stages: u32,
    ) -> Result<Self> {
        let name = name.into();
        if a.len() < 2 {
            return Err(Error::Config(format!("{name}: need at least a0 and a1")));
        }
        if a[a.len() - 1] == Rational64::from_integer(0) {
            return Err(Error::Config(format!("{name}: leading coefficient is zero")));
        }
        if stages == 0 {
            return Err(Error::Config(format!("{name}: stages must be >= 1")));
        }
        let b_f64 = match &b {
            BProvider::Constant(bs) => {
                if bs.len() != a.len() {
                    return Err(Error::Config(format!(
                        "{name}: {} a-coefficients but {} b-coefficients",
                        a.len(),
                        bs.len()
                    )));
                }
                Some(bs.iter().copied().map(ratio_to_f64).collect())
            }
            BProvider::PhaseFitted => {
                if a != ACoefficients::EIGHT_STEP.to_rationals() {
                    return Err(Error::Config(format!(
                        "{name}: phase fitting is only defined for the eight-step family"
                    )));
                }
                None
            }
        };
        let a_f64 = a.iter().copied().map(ratio_to_f64).collect();
        Ok(Self {
            name,
            a,
            a_f64,
            b,
            b_f64,
            stages,
        })
    }

    /// Eight-step method with infinite phase-lag order.
    pub fn phase_fitted() -> Self {
        Self::symmetric(
            PHASE_FITTED,
            ACoefficients::EIGHT_STEP.to_rationals(),
            BProvider::PhaseFitted,
            1,
        )
        .expect("valid built-in method")
    }

    /// Eight-step method of algebraic order ten.
    pub fn fixed() -> Self {
        Self::symmetric(
            FIXED,
            ACoefficients::EIGHT_STEP.to_rationals(),
            BProvider::Constant(coefficients::fixed_b_rationals().to_vec()),
            1,
        )
        .expect("valid built-in method")
    }

    /// Classical Numerov: `y+1 - 2 y0 + y-1 = h^2 (f+1 + 10 f0 + f-1) / 12`.
    pub fn numerov() -> Self {
        Self::symmetric(
            NUMEROV,
            vec![Rational64::from_integer(-2), Rational64::from_integer(1)],
            BProvider::Constant(vec![Rational64::new(10, 12), Rational64::new(1, 12)]),
            1,
        )
        .expect("valid built-in method")
    }

    pub fn builtin() -> Vec<MethodSpec> {
        vec![Self::phase_fitted(), Self::fixed(), Self::numerov()]
    }

    pub fn by_name(name: &str) -> Option<MethodSpec> {
        Self::builtin().into_iter().find(|m| m.name == name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `k` for a `2k`-step method.
    pub fn half_steps(&self) -> usize {
        self.a.len() - 1
    }

    pub fn steps(&self) -> usize {
        2 * self.half_steps()
    }

    pub fn stages(&self) -> u32 {
        self.stages
    }

    pub fn provider(&self) -> &BProvider {
        &self.b
    }

    pub fn is_frequency_dependent(&self) -> bool {
        matches!(self.b, BProvider::PhaseFitted)
    }

    pub fn a(&self) -> &[f64] {
        &self.a_f64
    }

    pub fn a_exact(&self) -> &[Rational64] {
        &self.a
    }

    /// Exact `b` half-vector for constant-coefficient methods.
    pub fn b_exact(&self) -> Option<&[Rational64]> {
        match &self.b {
            BProvider::Constant(b) => Some(b),
            BProvider::PhaseFitted => None,
        }
    }

    /// The `b` half-vector at `v = ωh`.
    pub fn b_at(&self, v: f64) -> Result<Cow<'_, [f64]>> {
        match (&self.b, &self.b_f64) {
            (_, Some(b)) => Ok(Cow::Borrowed(b)),
            (BProvider::PhaseFitted, None) => {
                let b4 = phase_fitted_b4(v)?;
                Ok(Cow::Owned(dependent_b_from_b4(b4).to_array().to_vec()))
            }
            (BProvider::Constant(_), None) => unreachable!("constant weights are cached"),
        }
    }

    /// The `b` half-vector in the limit `v -> 0`.
    pub fn b_limit(&self) -> Cow<'_, [f64]> {
        match &self.b_f64 {
            Some(b) => Cow::Borrowed(b),
            None => Cow::Owned(
                dependent_b_from_b4(coefficients::phase_fitted_b4_series(0.0))
                    .to_array()
                    .to_vec(),
            ),
        }
    }
}
