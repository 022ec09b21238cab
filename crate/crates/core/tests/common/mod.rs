//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own analysis code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `L[x^p]` at `x = 0`, `h = 1` for the symmetric method with half-vectors
/// `a`, `b`: `sum_i a_|i| i^p - p (p - 1) sum_i b_|i| i^(p-2)`.
pub fn moment(a: &[BigRational], b: &[BigRational], p: u32) -> BigRational {
    let k = a.len() as i64 - 1;
    let mut sum = BigRational::zero();
    for i in -k..=k {
        let j = i.unsigned_abs() as usize;
        let x = BigRational::from_integer(BigInt::from(i));
        sum += &a[j] * pow(&x, p);
        if p >= 2 {
            let c = BigRational::from_integer(BigInt::from(p as i64 * (p as i64 - 1)));
            sum -= &b[j] * c * pow(&x, p - 2);
        }
    }
    sum
}

fn pow(x: &BigRational, p: u32) -> BigRational {
    if p == 0 {
        BigRational::one()
    } else {
        num_traits::pow(x.clone(), p as usize)
    }
}

/// Algebraic order: the largest `q` with `L[x^p] = 0` for `p <= q + 1`,
/// where a moment counts as zero when it is below `rel` times the largest
/// term that enters it.
pub fn order_from_moments(a: &[BigRational], b: &[BigRational], rel: f64) -> i32 {
    for p in 0..40u32 {
        let m = moment(a, b, p).abs();
        let k = a.len() as i64 - 1;
        let scale = (0..=k)
            .map(|i| {
                let x = BigRational::from_integer(BigInt::from(i));
                let ta = (&a[i as usize] * pow(&x, p)).abs();
                let tb = if p >= 2 {
                    (&b[i as usize]
                        * BigRational::from_integer(BigInt::from(p as i64 * (p as i64 - 1)))
                        * pow(&x, p - 2))
                    .abs()
                } else {
                    BigRational::zero()
                };
                ta.max(tb)
            })
            .max()
            .unwrap();
        let zero = if rel == 0.0 {
            m.is_zero()
        } else {
            m <= scale * exact(rel)
        };
        if !zero {
            return p as i32 - 2;
        }
    }
    39
}

/// Fixed-point numbers with 256 fractional bits.
#[derive(Clone, Debug)]
pub struct Fx(BigInt);

const FRAC_BITS: u32 = 256;

impl Fx {
    pub fn from_f64(x: f64) -> Fx {
        let r = exact(x) * BigRational::from_integer(BigInt::one() << FRAC_BITS);
        Fx(r.round().to_integer())
    }

    pub fn from_rational(r: &BigRational) -> Fx {
        let scaled = r * BigRational::from_integer(BigInt::one() << FRAC_BITS);
        Fx(scaled.round().to_integer())
    }

    pub fn from_int(n: i64) -> Fx {
        Fx(BigInt::from(n) << FRAC_BITS)
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        Fx((&self.0 * &o.0) >> FRAC_BITS)
    }

    pub fn div_int(&self, n: i64) -> Fx {
        Fx(&self.0 / BigInt::from(n))
    }

    pub fn to_f64(&self) -> f64 {
        BigRational::new(self.0.clone(), BigInt::one() << FRAC_BITS)
            .to_f64()
            .unwrap()
    }

    pub fn ratio(&self, o: &Fx) -> f64 {
        BigRational::new(self.0.clone(), o.0.clone()).to_f64().unwrap()
    }
}

/// `cos x` by its Taylor series to about `2^-250` for `|x| <= 13`.
pub fn cos_fx(x: &Fx) -> Fx {
    let x2 = x.mul(x);
    let mut term = Fx::from_int(1);
    let mut sum = term.clone();
    for n in 1..=90i64 {
        term = term.mul(&x2).div_int((2 * n - 1) * (2 * n));
        if n % 2 == 1 {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
    }
    sum
}

/// Phase lag `(A0 + 2 sum Aj cos(jv)) / (2 sum j² Aj)` with `Aj = aj + v² bj`,
/// evaluated in 256-bit fixed point from the exact `f64` inputs.
pub fn phase_lag_extended(a: &[f64], b: &[f64], v: f64) -> f64 {
    let a: Vec<Fx> = a.iter().map(|&x| Fx::from_f64(x)).collect();
    let b: Vec<Fx> = b.iter().map(|&x| Fx::from_f64(x)).collect();
    phase_lag_fx(&a, &b, v)
}

/// Same, with rational coefficients, so the `f64` rounding of `b` does not
/// mask the truncation term at small `v`.
pub fn phase_lag_rational(a: &[BigRational], b: &[BigRational], v: f64) -> f64 {
    let a: Vec<Fx> = a.iter().map(Fx::from_rational).collect();
    let b: Vec<Fx> = b.iter().map(Fx::from_rational).collect();
    phase_lag_fx(&a, &b, v)
}

fn phase_lag_fx(a: &[Fx], b: &[Fx], v: f64) -> f64 {
    let vf = Fx::from_f64(v);
    let v2 = vf.mul(&vf);
    let coeff = |j: usize| a[j].add(&v2.mul(&b[j]));
    let mut num = coeff(0);
    let mut den = Fx::from_int(0);
    for j in 1..a.len() {
        let aj = coeff(j);
        let jv = vf.mul(&Fx::from_int(j as i64));
        num = num.add(&aj.mul(&cos_fx(&jv)).mul(&Fx::from_int(2)));
        den = den.add(&aj.mul(&Fx::from_int(2 * (j * j) as i64)));
    }
    num.ratio(&den)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Classical fourth-order Runge-Kutta for `y'' = f(x, y)`, scalar, on `n`
/// uniform steps. Returns the grid values of `y`.
pub fn rk4_second_order(
    f: impl Fn(f64, f64) -> f64,
    (x0, x1): (f64, f64),
    (y0, dy0): (f64, f64),
    n: usize,
) -> Vec<f64> {
    let h = (x1 - x0) / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let (mut y, mut z) = (y0, dy0);
    out.push(y);
    for i in 0..n {
        let x = x0 + i as f64 * h;
        let k1 = (z, f(x, y));
        let k2 = (z + 0.5 * h * k1.1, f(x + 0.5 * h, y + 0.5 * h * k1.0));
        let k3 = (z + 0.5 * h * k2.1, f(x + 0.5 * h, y + 0.5 * h * k2.0));
        let k4 = (z + h * k3.1, f(x + h, y + h * k3.0));
        y += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        z += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        out.push(y);
    }
    out
}

/// `tan δ` from samples `(x1, y1)`, `(x2, y2)` against `sin(kx)`, `-cos(kx)`.
pub fn tan_delta(k: f64, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> f64 {
    let (s1, s2) = ((k * x1).sin(), (k * x2).sin());
    let (c1, c2) = (-(k * x1).cos(), -(k * x2).cos());
    (y1 * s2 - y2 * s1) / (y2 * c1 - y1 * c2)
}

/// Woods-Saxon potential written out independently of the library.
pub fn woods_saxon(x: f64) -> f64 {
    let (u0, a, x0) = (-50.0f64, 0.6f64, 7.0f64);
    let u1 = -u0 / a;
    let q = ((x - x0) / a).exp();
    if q.is_infinite() {
        return 0.0;
    }
    u0 / (1.0 + q) + u1 * q / ((1.0 + q) * (1.0 + q))
}
