//! Fixed-step integration of `y'' = f(x, y)` with symmetric multistep methods.

mod problem;
pub mod reference;
mod state;

use std::sync::OnceLock;

pub use problem::{FrequencyFn, IvpProblem, LinearForm, RhsFn, ScalarFn, VectorFn};
pub use state::{Record, StepState, Trajectory};

use crate::error::{Error, Result};
use crate::methods::MethodSpec;

/// Extrapolated steps per grid interval when starting values are computed.
pub const BOOTSTRAP_SUBSTEPS: usize = 100;

const CORRECTOR_TOL: f64 = 1e-14;
const CORRECTOR_MAX_ITER: usize = 50;
const LINEAR_DENOMINATOR_MIN: f64 = 1e-12;

/// Result of the implicit stage.
#[derive(Debug, Clone, PartialEq)]
pub struct Corrected {
    pub y: Vec<f64>,
    /// Fixed-point iterations used; zero for explicit and linear solves.
    pub iterations: usize,
}

/// The first `points` grid values at `x_start + i h`.
///
/// Uses the exact solution when the problem has one; otherwise integrates
/// from `(y0, y'0)` with the order-10 extrapolation scheme at
/// [`BOOTSTRAP_SUBSTEPS`] substeps per grid interval.
pub fn bootstrap_start(problem: &IvpProblem, h: f64, points: usize) -> Result<StepState> {
    let length = problem.x_end() - problem.x_start();
    if !(h > 0.0) || points as f64 * h > length * (1.0 + 1e-12) {
        return Err(Error::StepTooLarge {
            h,
            needed: points,
            length,
        });
    }
    let x0 = problem.x_start();
    let ys: Vec<Vec<f64>> = match problem.has_exact() {
        true => (0..points)
            .map(|i| problem.exact(x0 + i as f64 * h).expect("exact solution"))
            .collect(),
        false => {
            let mut ys = reference::reference_grid(problem, h, points, BOOTSTRAP_SUBSTEPS);
            if problem.unit_slope_start() && points > 1 {
                let scale = h / ys[1][0];
                if !scale.is_finite() {
                    return Err(Error::InvalidProblem(format!(
                        "{}: cannot normalize a zero starting solution",
                        problem.name()
                    )));
                }
                ys.iter_mut().flatten().for_each(|v| *v *= scale);
            }
            ys
        }
    };
    let values = ys
        .into_iter()
        .enumerate()
        .map(|(i, y)| {
            let f = problem.rhs_vec(x0 + i as f64 * h, &y);
            (y, f)
        })
        .collect();
    StepState::from_values(x0, h, values)
}

/// Solves `y = E + h² β f(x, y)` for `y`.
///
/// Linear problems are solved in closed form; otherwise the fixed-point
/// iteration runs from `predictor` until the relative change drops below
/// `1e-14`.
pub fn solve_implicit(
    e: &[f64],
    x: f64,
    h: f64,
    beta: f64,
    problem: &IvpProblem,
    predictor: &[f64],
) -> Result<Corrected> {
    if beta == 0.0 {
        return Ok(Corrected {
            y: e.to_vec(),
            iterations: 0,
        });
    }
    let c = h * h * beta;
    if let Some(linear) = problem.linear() {
        let den = 1.0 - c * (linear.lambda)(x);
        if den.abs() <= LINEAR_DENOMINATOR_MIN {
            return Err(Error::SingularLinearSolve { x, denominator: den });
        }
        let mut y = e.to_vec();
        if let Some(g) = &linear.forcing {
            let mut gx = vec![0.0; e.len()];
            g(x, &mut gx);
            y.iter_mut().zip(&gx).for_each(|(y, g)| *y += c * g);
        }
        y.iter_mut().for_each(|y| *y /= den);
        return Ok(Corrected { y, iterations: 0 });
    }

    let mut y = predictor.to_vec();
    let mut f = vec![0.0; e.len()];
    for it in 1..=CORRECTOR_MAX_ITER {
        problem.rhs(x, &y, &mut f);
        let mut change = 0.0f64;
        let mut size = 0.0f64;
        for ((yi, ei), fi) in y.iter_mut().zip(e).zip(&f) {
            let next = ei + c * fi;
            change += (next - *yi) * (next - *yi);
            size += next * next;
            *yi = next;
        }
        if change.sqrt() <= CORRECTOR_TOL * size.sqrt() {
            return Ok(Corrected { y, iterations: it });
        }
    }
    Err(Error::CorrectorDiverged {
        x,
        iterations: CORRECTOR_MAX_ITER,
    })
}

/// One step of a symmetric `2k`-step method: consumes the window
/// `y_{-k} .. y_{k-1}` and appends `y_k`.
///
/// Frequency-dependent coefficients are evaluated at
/// `v = h · ω(x_k, y_{k-1})`.
pub fn advance<'s>(
    method: &MethodSpec,
    state: &'s mut StepState,
    problem: &IvpProblem,
) -> Result<&'s Record> {
    let k = method.half_steps();
    if state.len() != 2 * k {
        return Err(Error::InvalidProblem(format!(
            "{} needs a window of {} records, got {}",
            method.name(),
            2 * k,
            state.len()
        )));
    }
    let h = state.h();
    let (index, x_new) = state.next_x();
    let newest = state.newest();
    let v = problem.frequency(x_new, &newest.y) * h.abs();
    let b = method.b_at(v)?;
    let a = method.a();
    let records = state.records();
    let dim = newest.y.len();
    let h2 = h * h;
    let lead = a[k];

    // Window position m holds offset m - k.
    let at = |offset: isize| &records[(offset + k as isize) as usize];
    let mut e = vec![0.0; dim];
    for c in 0..dim {
        let oldest = at(-(k as isize));
        let mut s = -lead * oldest.y[c] + h2 * b[k] * oldest.f[c];
        for j in 1..k as isize {
            let (p, m) = (at(j), at(-j));
            s += -a[j as usize] * (p.y[c] + m.y[c]) + h2 * b[j as usize] * (p.f[c] + m.f[c]);
        }
        let centre = at(0);
        s += -a[0] * centre.y[c] + h2 * b[0] * centre.f[c];
        e[c] = s / lead;
    }

    let beta = b[k] / lead;
    let predictor: Vec<f64> = e
        .iter()
        .zip(&newest.f)
        .map(|(e, f)| e + h2 * beta * f)
        .collect();
    let Corrected { y, .. } = solve_implicit(&e, x_new, h, beta, problem, &predictor)?;
    let f = problem.rhs_vec(x_new, &y);
    state.push(Record {
        index,
        x: x_new,
        y,
        f,
    });
    Ok(state.newest())
}

fn numerov() -> &'static MethodSpec {
    static NUMEROV: OnceLock<MethodSpec> = OnceLock::new();
    NUMEROV.get_or_init(MethodSpec::numerov)
}

/// Numerov step on a two-record window.
pub fn numerov_advance<'s>(state: &'s mut StepState, problem: &IvpProblem) -> Result<&'s Record> {
    advance(numerov(), state, problem)
}

/// Integrates over the whole interval with `n_steps` equal steps and keeps
/// every grid sample.
pub fn integrate(method: &MethodSpec, problem: &IvpProblem, n_steps: usize) -> Result<Trajectory> {
    let x0 = problem.x_start();
    let h = (problem.x_end() - x0) / n_steps as f64;
    let window = method.steps();
    let mut state = bootstrap_start(problem, h, window)?;
    let mut traj = Trajectory::new(method.name(), h, problem.dim());
    for r in state.records() {
        traj.push(r.x, &r.y);
    }
    for _ in window..=n_steps {
        let r = advance(method, &mut state, problem)?;
        traj.push(r.x, &r.y);
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn oscillator(omega: f64, exact: bool) -> IvpProblem {
        let w2 = omega * omega;
        let p = IvpProblem::new(
            "osc",
            (0.0, 100.0),
            vec![1.0],
            vec![0.0],
            Arc::new(move |_, y: &[f64], out: &mut [f64]| out[0] = -w2 * y[0]),
        )
        .unwrap()
        .with_frequency(Arc::new(move |_, _| omega));
        if exact {
            p.with_exact(Arc::new(move |x, out: &mut [f64]| out[0] = (omega * x).cos()))
        } else {
            p
        }
    }

    fn cosine_window(omega: f64, h: f64, k: usize) -> StepState {
        centred_cosine_window(omega, h, k, k as f64 * h)
    }

    /// History `cos(ω x)` whose window centre (offset 0) sits at `centre`.
    fn centred_cosine_window(omega: f64, h: f64, k: usize, centre: f64) -> StepState {
        let origin = centre - k as f64 * h;
        let values = (0..2 * k)
            .map(|i| {
                let y = (omega * (origin + i as f64 * h)).cos();
                (vec![y], vec![-omega * omega * y])
            })
            .collect();
        StepState::from_values(origin, h, values).unwrap()
    }

    fn free(slope: f64) -> IvpProblem {
        IvpProblem::new(
            "line",
            (0.0, 10.0),
            vec![1.0],
            vec![slope],
            Arc::new(|_, _, out: &mut [f64]| out.fill(0.0)),
        )
        .unwrap()
    }

    #[test]
    fn bootstrap_without_exact_matches_cosine() {
        let p = oscillator(1.0, false);
        let h = 0.1;
        let s = bootstrap_start(&p, h, 8).unwrap();
        for r in s.records() {
            assert!((r.y[0] - r.x.cos()).abs() < 1e-11);
        }
        assert!(s.is_equally_spaced());
    }

    #[test]
    fn bootstrap_rejects_large_steps() {
        let p = oscillator(1.0, true);
        assert!(matches!(
            bootstrap_start(&p, 13.0, 8),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(bootstrap_start(&p, 12.5, 8).is_ok());
    }

    #[test]
    fn stored_f_matches_rhs() {
        let p = oscillator(2.0, true);
        let mut s = bootstrap_start(&p, 0.05, 8).unwrap();
        advance(&MethodSpec::phase_fitted(), &mut s, &p).unwrap();
        for r in s.records() {
            assert_eq!(r.f, p.rhs_vec(r.x, &r.y));
        }
    }

    #[test]
    fn lines_are_continued_exactly() {
        let p = free(0.5);
        for m in MethodSpec::builtin() {
            let k = m.half_steps();
            let values = (0..2 * k)
                .map(|i| (vec![1.0 + 0.5 * 0.1 * i as f64], vec![0.0]))
                .collect();
            let mut s = StepState::from_values(0.0, 0.1, values).unwrap();
            let r = advance(&m, &mut s, &p.clone().with_frequency(Arc::new(|_, _| 1.0))).unwrap();
            let expect = 1.0 + 0.5 * r.x;
            assert!((r.y[0] - expect).abs() < 1e-13, "{}: {}", m.name(), r.y[0]);
        }
    }

    #[test]
    fn phase_fitted_is_exact_on_matching_cosine() {
        for omega in [1.0, 10.0] {
            for h in [0.05, 0.1] {
                let p = oscillator(omega, true);
                let mut s = cosine_window(omega, h, 4);
                let r = advance(&MethodSpec::phase_fitted(), &mut s, &p).unwrap();
                let expect = (omega * 8.0 * h).cos();
                assert!(
                    (r.y[0] - expect).abs() <= 1e-11 * expect.abs(),
                    "ω={omega} h={h}: {} vs {expect}",
                    r.y[0]
                );
            }
        }
    }

    fn local_residual(m: &MethodSpec, h: f64) -> f64 {
        let p = oscillator(1.0, true);
        let k = m.half_steps();
        let mut s = centred_cosine_window(1.0, h, k, 0.3);
        let r = advance(m, &mut s, &p).unwrap();
        (r.y[0] - r.x.cos()).abs()
    }

    #[test]
    fn fixed_local_order_twelve() {
        let m = MethodSpec::fixed();
        let ratio = local_residual(&m, 0.4) / local_residual(&m, 0.2);
        // 2^12 = 4096
        assert!((ratio.log2() - 12.0).abs() < 0.5, "ratio {ratio}");
    }

    #[test]
    fn numerov_local_order_six() {
        let p = oscillator(1.0, true);
        let residual = |h: f64| {
            let mut s = centred_cosine_window(1.0, h, 1, 0.3);
            let r = numerov_advance(&mut s, &p).unwrap();
            (r.y[0] - r.x.cos()).abs()
        };
        let ratio = residual(0.2) / residual(0.1);
        assert!((ratio.log2() - 6.0).abs() < 0.3, "ratio {ratio}");
    }

    #[test]
    fn explicit_case_returns_e() {
        let p = oscillator(1.0, true);
        let c = solve_implicit(&[0.3], 1.0, 0.1, 0.0, &p, &[9.0]).unwrap();
        assert_eq!(c.y, vec![0.3]);
    }

    #[test]
    fn linear_solve_matches_fixed_point() {
        let rhs: RhsFn = Arc::new(|x, y: &[f64], out: &mut [f64]| out[0] = -100.0 * y[0] + 99.0 * x.sin());
        let plain = IvpProblem::new("inh", (0.0, 1.0), vec![1.0], vec![11.0], rhs).unwrap();
        let linear = plain.clone().with_linear_form(LinearForm {
            lambda: Arc::new(|_| -100.0),
            forcing: Some(Arc::new(|x, out: &mut [f64]| out[0] = 99.0 * x.sin())),
        });
        let (h, b4, x) = (0.01, 45767.0 / 725760.0, 0.37);
        let e = [0.8];
        let closed = solve_implicit(&e, x, h, b4, &linear, &e).unwrap();
        let expect = (0.8 + h * h * b4 * 99.0 * x.sin()) / (1.0 + 100.0 * h * h * b4);
        assert!((closed.y[0] - expect).abs() < 1e-15);
        let iter = solve_implicit(&e, x, h, b4, &plain, &e).unwrap();
        assert!(iter.iterations <= 20);
        assert!((closed.y[0] - iter.y[0]).abs() <= 1e-14 * expect.abs());
    }

    #[test]
    fn singular_linear_solve() {
        let p = oscillator(1.0, true).with_linear_form(LinearForm {
            lambda: Arc::new(|_| 1.0),
            forcing: None,
        });
        assert!(matches!(
            solve_implicit(&[1.0], 0.0, 1.0, 1.0, &p, &[1.0]),
            Err(Error::SingularLinearSolve { .. })
        ));
    }

    #[test]
    fn corrector_divergence_is_reported() {
        // Contraction factor h² β |λ| = 4 > 1.
        let p = oscillator(2.0, true);
        assert!(matches!(
            solve_implicit(&[1.0], 0.0, 1.0, 1.0, &p, &[1.0]),
            Err(Error::CorrectorDiverged { .. })
        ));
    }

    #[test]
    fn structural_counts() {
        let p = oscillator(1.0, true);
        let short = IvpProblem::new("short", (0.0, 1.0), vec![1.0], vec![0.0], Arc::new(|_, y: &[f64], out: &mut [f64]| out[0] = -y[0]))
            .unwrap()
            .with_exact(Arc::new(|x, out: &mut [f64]| out[0] = x.cos()));
        let t = integrate(&MethodSpec::fixed(), &short, 8).unwrap();
        assert_eq!(t.len(), 9);
        let t = integrate(&MethodSpec::numerov(), &p, 1000).unwrap();
        assert_eq!(t.len(), 1001);
        assert!((t.last().unwrap().0 - 100.0).abs() < 1e-10);
        assert!(integrate(&MethodSpec::fixed(), &p, 7).is_err());
    }

    #[test]
    fn time_reversal() {
        let p = oscillator(1.0, true);
        for m in [MethodSpec::fixed(), MethodSpec::phase_fitted()] {
            let h = 0.1;
            let start = cosine_window(1.0, h, 4);
            let mut fwd = start.clone();
            advance(&m, &mut fwd, &p).unwrap();
            let mut back = fwd.reversed();
            let r = advance(&m, &mut back, &p).unwrap();
            let original = &start.records()[0];
            assert!((r.x - original.x).abs() < 1e-12);
            assert!((r.y[0] - original.y[0]).abs() < 1e-11, "{}", m.name());
        }
    }
}
