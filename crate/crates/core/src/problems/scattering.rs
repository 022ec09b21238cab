//! Woods-Saxon potential and s-wave phase shifts.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::integrator::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WoodsSaxonParams {
    /// Well depth.
    pub u0: f64,
    /// Surface diffuseness.
    pub a: f64,
    /// Radius.
    pub x0: f64,
    /// Surface term, `-u0 / a`.
    pub u1: f64,
}

impl Default for WoodsSaxonParams {
    fn default() -> Self {
        let (u0, a) = (-50.0, 0.6);
        Self {
            u0,
            a,
            x0: 7.0,
            u1: -u0 / a,
        }
    }
}

/// `V(x) = u0 / (1 + q) + u1 q / (1 + q)²`, `q = exp((x - x0) / a)`.
pub fn woods_saxon(x: f64, p: &WoodsSaxonParams) -> f64 {
    let t = (x - p.x0) / p.a;
    if t <= 0.0 {
        let q = t.exp();
        let s = 1.0 + q;
        p.u0 / s + p.u1 * q / (s * s)
    } else {
        // Written in exp(-t) so large radii underflow to zero instead of inf/inf.
        let r = (-t).exp();
        let s = 1.0 + r;
        p.u0 * r / s + p.u1 * r / (s * s)
    }
}

/// A scattering energy for the `l = 0` resonance problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceCase {
    energy: f64,
}

impl ResonanceCase {
    pub const E989: ResonanceCase = ResonanceCase {
        energy: 989.701916,
    };
    pub const E341: ResonanceCase = ResonanceCase {
        energy: 341.495874,
    };
    pub const E163: ResonanceCase = ResonanceCase {
        energy: 163.215341,
    };

    pub const ALL: [ResonanceCase; 3] = [Self::E989, Self::E341, Self::E163];

    /// Requires `E > 50` so that both fitted frequencies are real.
    pub fn new(energy: f64) -> Result<Self> {
        if !(energy > 50.0) || !energy.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "resonance energy {energy} must exceed the well depth 50"
            )));
        }
        Ok(Self { energy })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn wavenumber(&self) -> f64 {
        self.energy.sqrt()
    }

    /// Angular momentum; only s-waves are supported.
    pub fn l(&self) -> u32 {
        0
    }

    /// Integer part of the energy, used in problem ids.
    pub fn label(&self) -> String {
        format!("{}", self.energy.trunc() as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftResult {
    /// `arctan(tan δ)` in `(-π/2, π/2]`.
    pub delta: f64,
    pub tan_delta: f64,
    /// Distance of `δ` from `±π/2`, computed as `arctan(1 / |tan δ|)`.
    pub abs_error: f64,
}

/// Phase shift from two asymptotic samples `i < j`, matching
/// `y ∝ S + tan δ · C` with
/// `S(x) = sin(kx)` and `C(x) = -cos(kx)`:
///
/// ```text
/// tan δ = (y_i S_j - y_j S_i) / (y_j C_i - y_i C_j)
/// ```
pub fn phase_shift(
    traj: &Trajectory,
    case: &ResonanceCase,
    i: usize,
    j: usize,
) -> Result<PhaseShiftResult> {
    if i >= j || j >= traj.len() {
        return Err(Error::InvalidProblem(format!(
            "phase-shift samples need i < j < {}, got i = {i}, j = {j}",
            traj.len()
        )));
    }
    let k = case.wavenumber();
    let (xi, xj) = (traj.x(i), traj.x(j));
    let (yi, yj) = (traj.y(i)[0], traj.y(j)[0]);
    let (si, sj) = ((k * xi).sin(), (k * xj).sin());
    let (ci, cj) = (-(k * xi).cos(), -(k * xj).cos());

    let num = yi * sj - yj * si;
    let den = yj * ci - yi * cj;
    // Both vanish together only when sin(k (xj - xi)) ~ 0 or y ~ 0.
    let scale = yi.abs() + yj.abs();
    if num.abs().max(den.abs()) <= 1e-12 * scale || scale == 0.0 {
        return Err(Error::DegenerateSample { i, j });
    }

    let tan_delta = num / den;
    let delta = if den == 0.0 {
        FRAC_PI_2
    } else {
        let d = tan_delta.atan();
        if d == -FRAC_PI_2 {
            FRAC_PI_2
        } else {
            d
        }
    };
    let abs_error = (den.abs() / num.abs()).atan();
    Ok(PhaseShiftResult {
        delta,
        tan_delta,
        abs_error,
    })
}

/// Abscissa of the first asymptotic sample.
pub const ASYMPTOTIC_X: f64 = 14.0;

/// Phase shift from the grid point nearest `x = 14` and the last grid point.
pub fn resonance_phase_shift(traj: &Trajectory, case: &ResonanceCase) -> Result<PhaseShiftResult> {
    let j = traj.len().saturating_sub(1);
    let i = traj
        .nearest_index(ASYMPTOTIC_X)
        .ok_or_else(|| Error::InvalidProblem("empty trajectory".into()))?;
    phase_shift(traj, case, i, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(k: f64, f: impl Fn(f64) -> f64) -> Trajectory {
        let h = 15.0 / 1500.0;
        let mut t = Trajectory::new("synthetic", h, 1);
        for i in 0..=1500 {
            let x = i as f64 * h;
            t.push(x, &[f(x)]);
        }
        let _ = k;
        t
    }

    #[test]
    fn params() {
        let p = WoodsSaxonParams::default();
        assert!((p.u1 - 250.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn potential_values() {
        let p = WoodsSaxonParams::default();
        assert!((woods_saxon(7.0, &p) - (-25.0 + 125.0 / 6.0)).abs() < 1e-13);
        assert!(woods_saxon(50.0, &p).abs() < 1e-20);
        assert_eq!(woods_saxon(1e6, &p), 0.0);
        // Reference values from a 50-digit evaluation.
        let v0 = -49.998_856_690_717_53;
        assert!((woods_saxon(0.0, &p) - v0).abs() < 1e-12 * v0.abs());
        let v14 = 2.858_227_250_974_388_4e-4;
        assert!((woods_saxon(14.0, &p) - v14).abs() < 1e-12 * v14);
        let v15 = 5.398_625_371_699_690e-5;
        assert!((woods_saxon(15.0, &p) - v15).abs() < 1e-12 * v15);
    }

    #[test]
    fn potential_decays_monotonically_outside_surface() {
        let p = WoodsSaxonParams::default();
        let start = p.x0 + 5.0 * p.a;
        let mut prev = woods_saxon(start, &p);
        for i in 1..=500 {
            let v = woods_saxon(start + i as f64 * 0.01, &p);
            assert!(v < prev && v > 0.0);
            prev = v;
        }
    }

    #[test]
    fn recovers_synthetic_phase_shift() {
        let case = ResonanceCase::E341;
        let k = case.wavenumber();
        let target = 0.3f64;
        let t = synthetic(k, |x| (k * x).sin() - target.tan() * (k * x).cos());
        let r = resonance_phase_shift(&t, &case).unwrap();
        assert!((r.delta - target).abs() < 1e-12, "{r:?}");
        assert!((r.abs_error - (FRAC_PI_2 - target)).abs() < 1e-12);
    }

    #[test]
    fn pure_cosine_is_a_resonance() {
        let case = ResonanceCase::E989;
        let k = case.wavenumber();
        let t = synthetic(k, |x| (k * x).cos());
        let r = resonance_phase_shift(&t, &case).unwrap();
        assert!((r.delta.abs() - FRAC_PI_2).abs() < 1e-10);
        assert!(r.abs_error < 1e-10);
    }

    #[test]
    fn degenerate_spacing() {
        // Samples exactly one wavelength apart carry no phase information.
        let case = ResonanceCase::new(4.0 * std::f64::consts::PI * std::f64::consts::PI * 100.0)
            .unwrap();
        let k = case.wavenumber();
        let mut t = Trajectory::new("synthetic", 0.1, 1);
        for i in 0..=10 {
            let x = 14.0 + i as f64 * 0.1;
            t.push(x, &[(k * x + 0.4).sin()]);
        }
        assert!(matches!(
            phase_shift(&t, &case, 0, 10),
            Err(Error::DegenerateSample { .. })
        ));
    }

    #[test]
    fn rejects_bad_indices_and_energies() {
        let t = synthetic(1.0, |x| x);
        assert!(phase_shift(&t, &ResonanceCase::E163, 5, 5).is_err());
        assert!(ResonanceCase::new(40.0).is_err());
    }

    #[test]
    fn scale_invariance() {
        let case = ResonanceCase::E163;
        let k = case.wavenumber();
        let t = synthetic(k, |x| (k * x + 0.7).sin());
        let a = resonance_phase_shift(&t, &case).unwrap();
        let b = resonance_phase_shift(&t.scaled(17.3), &case).unwrap();
        assert!((a.delta - b.delta).abs() < 1e-13);
    }
}
