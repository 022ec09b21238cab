//! Coefficient engines for the eight-step family
//!
//! ```text
//! y4 + y-4 + a3 (y3 + y-3) + a2 (y2 + y-2) + a1 (y1 + y-1)
//!     = h^2 [ b4 (f4 + f-4) + b3 (f3 + f-3) + b2 (f2 + f-2) + b1 (f1 + f-1) + b0 f0 ]
//! ```
//!
//! with the `a` coefficients fixed at `(a1, a2, a3) = (-1, 2, -2)`. Four of
//! the five `b` weights are tied to `b4` by the algebraic order conditions;
//! `b4` itself is either the maximal-order constant or the frequency-dependent
//! value that cancels the phase lag.

use std::f64::consts::PI;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// Leading-term `a` coefficients of a symmetric eight-step method.
///
/// `a4` multiplies the implicit pair `y4 + y-4`; `a0` multiplies `y0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ACoefficients {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl ACoefficients {
    pub const EIGHT_STEP: ACoefficients = ACoefficients {
        a0: 0.0,
        a1: -1.0,
        a2: 2.0,
        a3: -2.0,
        a4: 1.0,
    };

    /// `a0 + 2 (a1 + a2 + a3 + a4)`; zero for a consistent method.
    pub fn consistency_sum(&self) -> f64 {
        self.a0 + 2.0 * (self.a1 + self.a2 + self.a3 + self.a4)
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.a0, self.a1, self.a2, self.a3, self.a4]
    }

    pub(crate) fn to_rationals(&self) -> Vec<Rational64> {
        // All admissible leading coefficients in this family are integers.
        self.to_array()
            .iter()
            .map(|&a| Rational64::from_integer(a as i64))
            .collect()
    }
}

/// Weights of the `h^2 f` terms, `b0` for the centre node and `bj` for the
/// symmetric pair at `±j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BCoefficients {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
}

impl BCoefficients {
    /// `b0 + 2 (b1 + b2 + b3 + b4)`; equals 5 for second-order consistency
    /// with [`ACoefficients::EIGHT_STEP`].
    pub fn consistency_sum(&self) -> f64 {
        self.b0 + 2.0 * (self.b1 + self.b2 + self.b3 + self.b4)
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.b0, self.b1, self.b2, self.b3, self.b4]
    }
}

/// Maximal algebraic order (ten) coefficients, as exact rationals.
pub fn fixed_b_rationals() -> [Rational64; 5] {
    [
        Rational64::new(17273, 72576),
        Rational64::new(280997, 181440),
        Rational64::new(-33961, 181440),
        Rational64::new(173531, 181440),
        Rational64::new(45767, 725760),
    ]
}

/// `b4` of the maximal-order method, which is also the `v -> 0` limit of the
/// phase-fitted `b4`.
pub const FIXED_B4: f64 = 45767.0 / 725760.0;

pub fn fixed_b_coefficients() -> BCoefficients {
    let [b0, b1, b2, b3, b4] = fixed_b_rationals().map(ratio_to_f64);
    BCoefficients { b0, b1, b2, b3, b4 }
}

/// The order conditions through `x^9` leave `b0..b3` affine in `b4`:
///
/// ```text
/// b0 = 70 b4 - 12629/3024     b1 = -56 b4 + 20483/4032
/// b2 = 28 b4 - 3937/2016      b3 = -8 b4 + 17671/12096
/// ```
///
/// Evaluated as offsets from the fixed set, `bj = bj* + sj (b4 - b4*)`, so
/// that `b4 = b4*` returns the correctly rounded fixed weights and nearby
/// `b4` do not cancel `70 b4` against `12629/3024`.
pub fn dependent_b_from_b4(b4: f64) -> BCoefficients {
    let fixed = fixed_b_coefficients();
    let d = b4 - FIXED_B4;
    BCoefficients {
        b0: fixed.b0 + 70.0 * d,
        b1: fixed.b1 - 56.0 * d,
        b2: fixed.b2 + 28.0 * d,
        b3: fixed.b3 - 8.0 * d,
        b4,
    }
}

/// Closed form of the phase-fitted `b4` is used for `v >= SERIES_SWITCH`,
/// the Taylor expansion below it.
pub const SERIES_SWITCH: f64 = 1.2;

/// Upper end of the phase-fitted domain. The denominator of the closed form
/// vanishes again at `v = 2π`.
pub const PHASE_FITTED_V_MAX: f64 = 2.0 * PI * 0.999;

/// Taylor coefficients of the phase-fitted `b4` in powers of `v^2`, from
/// `v^0` through `v^34`. Each entry is the correctly rounded value of an
/// exact rational expansion of the closed form about `v = 0`; the test suite
/// regenerates the rationals and checks every entry.
pub const B4_SERIES: [f64; 18] = [
    0.06306079144620812,     // 45767/725760
    0.0018181880812089145,   // 58061/31933440
    9.176294415216373e-06,   // 2399921/261534873600
    -2.0151122400833048e-06, // -602311/298896998400
    -1.3511268941175278e-07, // -1067953/7904165068800
    -5.749850833494053e-09,
    -1.8868179440535146e-10,
    -4.7359764905001265e-12,
    -6.756619072120554e-14,
    1.5482742640624667e-15,
    1.8673069365515688e-16,
    1.0460631344576643e-17,
    4.662796098622631e-19,
    1.8337427120536532e-20,
    6.608559645638619e-22,
    2.2185852954916723e-23,
    6.976917547596609e-25,
    2.049070253744152e-26,
];

/// Phase-fitted `b4` at `v = ωh`: the unique `b4` for which the dependent
/// coefficient set has zero phase lag at `v`.
pub fn phase_fitted_b4(v: f64) -> Result<f64> {
    if !(v > 0.0 && v < PHASE_FITTED_V_MAX) {
        return Err(Error::Domain {
            v,
            upper: PHASE_FITTED_V_MAX,
        });
    }
    if v < SERIES_SWITCH {
        Ok(phase_fitted_b4_series(v))
    } else {
        Ok(phase_fitted_b4_closed_form(v))
    }
}

/// Direct double-precision evaluation of `-(1/24192) C/D`. Loses roughly
/// `-10 log10(v) + 4` digits to cancellation as `v -> 0`.
pub fn phase_fitted_b4_closed_form(v: f64) -> f64 {
    let c = v.cos();
    let v2 = v * v;
    let c2 = c * c;
    let c3 = c2 * c;
    let c4 = c3 * c;
    let num = 24192.0 * c4 + (17671.0 * v2 - 24192.0) * c3 - (12096.0 + 11811.0 * v2) * c2
        + (15120.0 + 2109.0 * v2) * c
        - 409.0 * v2
        - 3024.0;
    let den = v2 * (c4 - 4.0 * c3 + 6.0 * c2 - 4.0 * c + 1.0);
    -num / (24192.0 * den)
}

/// Truncated Taylor expansion of the phase-fitted `b4`; valid for `|v| < 2π`,
/// accurate to double precision for `|v| <= 2.4`.
pub fn phase_fitted_b4_series(v: f64) -> f64 {
    let v2 = v * v;
    B4_SERIES.iter().rev().fold(0.0, |acc, &c| acc * v2 + c)
}

pub(crate) fn ratio_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
