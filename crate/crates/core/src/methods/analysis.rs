//! Phase-lag and algebraic-order analysis of symmetric multistep methods.
//!
//! Applied to `y'' = -ω² y`, a symmetric `2k`-step method yields the
//! difference equation `sum_j A_j(v) (y_{n+j} + y_{n-j}) + A_0(v) y_n = 0`
//! with `A_j(v) = a_j + v² b_j`. The phase lag is read off the ratio
//!
//! ```text
//! PL(v) = (A_0 + 2 sum_j A_j cos(j v)) / (2 sum_j j² A_j) = -c v^(q+2) + O(v^(q+4))
//! ```
//!
//! For the high-order methods `PL(v)` is far below double-precision roundoff
//! on small `v` when the numerator is summed as written. Expanding the
//! cosines gives the exact identity
//!
//! ```text
//! numerator(v) = sum_n (-1)^n v^(2n) L[x^(2n)] / (2n)!
//! ```
//!
//! where `L` is the method's linear operator at `x = 0`, `h = 1`. For
//! constant-coefficient methods the moments `L[x^(2n)]` are computed in
//! exact rational arithmetic, so the vanishing low-order terms drop out
//! without cancellation.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use super::MethodSpec;
use crate::error::{Error, Result};

/// Values `A_0(v), .., A_k(v)` of the characteristic polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityPolys(pub Vec<f64>);

impl StabilityPolys {
    pub fn coeff(&self, j: usize) -> f64 {
        self.0[j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseLagReport {
    /// Fitted exponent minus two.
    pub order_estimate: f64,
    /// `c` in `PL(v) ≈ -c v^(q+2)`.
    pub constant_estimate: f64,
    /// Largest deviation of `log10 |PL|` from the fitted line.
    pub fit_residual: f64,
}

/// Below this `v` constant-coefficient methods use the moment expansion.
const SERIES_PHASE_LAG_MAX_V: f64 = 1.0;
/// Enough terms for `v <= 1` and `k <= 4`: `(4 v)^(2n) / (2n)!` drops below
/// `1e-30` well before `n = 30`.
const SERIES_TERMS: usize = 30;

pub fn stability_polys(method: &MethodSpec, v: f64) -> Result<StabilityPolys> {
    let b = if v == 0.0 {
        method.b_limit()
    } else {
        method.b_at(v)?
    };
    let v2 = v * v;
    Ok(StabilityPolys(
        method
            .a()
            .iter()
            .zip(b.iter())
            .map(|(a, b)| a + v2 * b)
            .collect(),
    ))
}

/// The phase-lag ratio evaluated term by term in double precision.
pub fn phase_lag_direct(method: &MethodSpec, v: f64) -> Result<f64> {
    let polys = stability_polys(method, v)?;
    let mut num = polys.coeff(0);
    let mut den = 0.0;
    for (j, &aj) in polys.0.iter().enumerate().skip(1) {
        let jf = j as f64;
        num += 2.0 * aj * (jf * v).cos();
        den += 2.0 * jf * jf * aj;
    }
    if den.abs() < 1e-300 {
        return Err(Error::DegenerateDenominator { v });
    }
    Ok(num / den)
}

/// Phase-lag ratio at `v`. Constant-coefficient methods use the exact moment
/// expansion for `v <= 1`; everything else is evaluated directly.
pub fn phase_lag_value(method: &MethodSpec, v: f64) -> Result<f64> {
    match method.b_exact() {
        Some(b) if v.abs() <= SERIES_PHASE_LAG_MAX_V => {
            let polys = stability_polys(method, v)?;
            let den: f64 = polys
                .0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, aj)| 2.0 * (j * j) as f64 * aj)
                .sum();
            if den.abs() < 1e-300 {
                return Err(Error::DegenerateDenominator { v });
            }
            let coeffs = numerator_series(method.a_exact(), b, SERIES_TERMS);
            let v2 = v * v;
            let num = coeffs.iter().rev().fold(0.0, |acc, c| acc * v2 + c);
            Ok(num / den)
        }
        _ => phase_lag_direct(method, v),
    }
}

/// `(-1)^n L[x^(2n)] / (2n)!` for `n = 0..terms`, rounded once to `f64`.
fn numerator_series(a: &[Rational64], b: &[Rational64], terms: usize) -> Vec<f64> {
    let mut factorial = BigInt::from(1);
    (0..terms)
        .map(|n| {
            let p = 2 * n as u32;
            if n > 0 {
                factorial *= BigInt::from((p - 1) * p);
            }
            let moment = l_monomial_exact(a, b, p);
            let mut term = moment / BigRational::from_integer(factorial.clone());
            if n % 2 == 1 {
                term = -term;
            }
            term.to_f64().unwrap_or(f64::NAN)
        })
        .collect()
}

/// `L[x^p]` at `x = 0`, `h = 1`, in exact arithmetic.
pub(crate) fn l_monomial_exact(a: &[Rational64], b: &[Rational64], p: u32) -> BigRational {
    let big = |r: &Rational64| {
        BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    };
    let mut sum = BigRational::zero();
    // Odd powers cancel between the ±j nodes.
    if p % 2 == 1 {
        return sum;
    }
    for (j, (aj, bj)) in a.iter().zip(b).enumerate() {
        let weight = if j == 0 { 1 } else { 2 };
        let jp = |e: u32| BigRational::from_integer(BigInt::from(j).pow(e));
        sum += big(aj) * jp(p) * BigRational::from_integer(weight.into());
        if p >= 2 {
            let pp = BigRational::from_integer(BigInt::from(p * (p - 1)));
            sum -= big(bj) * jp(p - 2) * pp * BigRational::from_integer(weight.into());
        }
    }
    sum
}

const FIT_POINTS: usize = 20;
const FIT_V_MIN: f64 = 1e-2;
const FIT_V_MAX: f64 = 1e-1;
const ZERO_THRESHOLD: f64 = 1e-13;

/// Least-squares fit of `log10 |PL(v)|` against `log10 v` on 20 logarithmically
/// spaced points of `[0.01, 0.1]`.
///
/// Fails with [`Error::IdenticallyZero`] when the phase lag vanishes: for
/// constant coefficients when every exact moment is zero, otherwise when
/// all samples are below `1e-13`.
pub fn estimate_phase_lag_order(method: &MethodSpec) -> Result<PhaseLagReport> {
    let lo = FIT_V_MIN.log10();
    let hi = FIT_V_MAX.log10();
    let samples = (0..FIT_POINTS)
        .map(|i| {
            let v = 10f64.powf(lo + (hi - lo) * i as f64 / (FIT_POINTS - 1) as f64);
            phase_lag_value(method, v).map(|pl| (v, pl))
        })
        .collect::<Result<Vec<_>>>()?;

    let vanishes = match method.b_exact() {
        // Exact moments: zero only if every series coefficient is.
        Some(b) => (0..SERIES_TERMS as u32)
            .all(|n| l_monomial_exact(method.a_exact(), b, 2 * n).is_zero()),
        None => samples.iter().all(|(_, pl)| pl.abs() < ZERO_THRESHOLD),
    };
    if vanishes {
        return Err(Error::IdenticallyZero);
    }
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, pl)| *pl != 0.0)
        .map(|(v, pl)| (v.log10(), pl.abs().log10()))
        .collect();
    if points.len() < 2 {
        return Err(Error::IdenticallyZero);
    }

    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let fit_residual = points
        .iter()
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);

    let sign = samples.iter().map(|(_, pl)| pl.signum()).sum::<f64>().signum();
    Ok(PhaseLagReport {
        order_estimate: slope - 2.0,
        constant_estimate: -sign * 10f64.powf(intercept),
        fit_residual,
    })
}

const ORDER_TOLERANCE: f64 = 1e-9;
const MAX_ORDER_PROBE: u32 = 40;

/// Largest `p` such that `L` annihilates `1, x, .., x^(p+1)`, tested in double
/// precision with `|L| / max|term| < 1e-9`. `at_v = 0` uses the `v -> 0`
/// limit of frequency-dependent coefficients.
pub fn algebraic_order(method: &MethodSpec, at_v: f64) -> Result<i32> {
    let b = if at_v == 0.0 {
        method.b_limit()
    } else {
        method.b_at(at_v)?
    };
    let a = method.a();
    let k = method.half_steps() as i32;
    for p in 0..=MAX_ORDER_PROBE {
        let pi = p as i32;
        let mut sum = 0.0;
        let mut scale = 0.0f64;
        for i in -k..=k {
            let j = i.unsigned_abs() as usize;
            let x = i as f64;
            let ta = a[j] * x.powi(pi);
            let tb = if p >= 2 {
                (p * (p - 1)) as f64 * b[j] * x.powi(pi - 2)
            } else {
                0.0
            };
            sum += ta - tb;
            scale = scale.max(ta.abs()).max(tb.abs());
        }
        if scale > 0.0 && sum.abs() >= ORDER_TOLERANCE * scale {
            return Ok(pi - 2);
        }
    }
    Ok(MAX_ORDER_PROBE as i32 - 1)
}
