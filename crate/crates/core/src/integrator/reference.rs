//! One-step reference integrator for starting values: Gragg-Bulirsch-Stoer
//! extrapolation of the modified midpoint rule with the fixed sequence
//! `2, 4, 6, 8, 10`, which is of order 10.

use super::IvpProblem;

const SEQUENCE: [usize; 5] = [2, 4, 6, 8, 10];

/// One extrapolated step of size `big_h` on the first-order system
/// `(y, y')' = (y', f(x, y))`. Returns `(y, y')` at `x + big_h`.
pub fn extrapolated_step(
    problem: &IvpProblem,
    x: f64,
    y: &[f64],
    dy: &[f64],
    big_h: f64,
) -> (Vec<f64>, Vec<f64>) {
    let n = y.len();
    // prev[j] = T(i-1, j) of the Aitken-Neville tableau in h^2.
    let mut prev: Vec<Vec<f64>> = Vec::new();
    for (i, &steps) in SEQUENCE.iter().enumerate() {
        let mut row = Vec::with_capacity(i + 1);
        row.push(modified_midpoint(problem, x, y, dy, big_h, steps));
        for j in 1..=i {
            let ratio = (steps as f64 / SEQUENCE[i - j] as f64).powi(2) - 1.0;
            let t: Vec<f64> = row[j - 1]
                .iter()
                .zip(&prev[j - 1])
                .map(|(cur, old)| cur + (cur - old) / ratio)
                .collect();
            row.push(t);
        }
        prev = row;
    }
    let best = prev.pop().expect("nonempty sequence");
    let (ys, dys) = best.split_at(n);
    (ys.to_vec(), dys.to_vec())
}

fn modified_midpoint(
    problem: &IvpProblem,
    x: f64,
    y: &[f64],
    dy: &[f64],
    big_h: f64,
    steps: usize,
) -> Vec<f64> {
    let n = y.len();
    let h = big_h / steps as f64;
    let mut acc = vec![0.0; n];

    let mut z_prev: Vec<f64> = y.iter().chain(dy).copied().collect();
    problem.rhs(x, y, &mut acc);
    let mut z: Vec<f64> = (0..2 * n)
        .map(|c| {
            if c < n {
                y[c] + h * dy[c]
            } else {
                dy[c - n] + h * acc[c - n]
            }
        })
        .collect();

    for m in 1..steps {
        let xm = x + m as f64 * h;
        problem.rhs(xm, &z[..n], &mut acc);
        let next: Vec<f64> = (0..2 * n)
            .map(|c| {
                let deriv = if c < n { z[n + c] } else { acc[c - n] };
                z_prev[c] + 2.0 * h * deriv
            })
            .collect();
        z_prev = std::mem::replace(&mut z, next);
    }

    problem.rhs(x + big_h, &z[..n], &mut acc);
    (0..2 * n)
        .map(|c| {
            let deriv = if c < n { z[n + c] } else { acc[c - n] };
            0.5 * (z[c] + z_prev[c] + h * deriv)
        })
        .collect()
}

/// Values of `y` at `x0 + i h` for `i = 0..points`, each grid interval split
/// into `substeps` extrapolated steps.
pub fn reference_grid(problem: &IvpProblem, h: f64, points: usize, substeps: usize) -> Vec<Vec<f64>> {
    let x0 = problem.x_start();
    let mut y = problem.y0().to_vec();
    let mut dy = problem.dy0().to_vec();
    let mut out = Vec::with_capacity(points);
    if points == 0 {
        return out;
    }
    out.push(y.clone());
    let small = h / substeps as f64;
    for i in 1..points {
        let base = x0 + (i - 1) as f64 * h;
        for s in 0..substeps {
            let (ny, ndy) = extrapolated_step(problem, base + s as f64 * small, &y, &dy, small);
            y = ny;
            dy = ndy;
        }
        out.push(y.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn oscillator() -> IvpProblem {
        IvpProblem::new(
            "cos",
            (0.0, 10.0),
            vec![1.0],
            vec![0.0],
            Arc::new(|_, y: &[f64], out: &mut [f64]| out[0] = -y[0]),
        )
        .unwrap()
    }

    #[test]
    fn single_step_is_tenth_order() {
        let p = oscillator();
        let err = |h: f64| {
            let (y, _) = extrapolated_step(&p, 0.0, &[1.0], &[0.0], h);
            (y[0] - h.cos()).abs()
        };
        // Local error O(h^11): halving gains ~2^11 until roundoff.
        let ratio = err(1.0) / err(0.5);
        assert!(ratio > 1000.0, "ratio {ratio}");
    }

    #[test]
    fn grid_matches_cosine() {
        let p = oscillator();
        let grid = reference_grid(&p, 0.3, 8, 100);
        for (i, y) in grid.iter().enumerate() {
            assert!((y[0] - (0.3 * i as f64).cos()).abs() < 1e-13);
        }
    }
}
