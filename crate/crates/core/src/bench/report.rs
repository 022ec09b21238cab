use std::fmt;

use num_rational::Rational64;

use crate::error::Error;
use crate::methods::coefficients::{fixed_b_rationals, PHASE_FITTED_V_MAX};
use crate::methods::{
    algebraic_order, estimate_phase_lag_order, phase_lag_value, MethodSpec,
};

/// One line of the `verify` report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "ok  " } else { "FAIL" };
        write!(f, "{tag} {:<40} {}", self.name, self.detail)
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Coefficient, order and phase-lag checks of the bundled methods.
pub fn verify_report() -> Vec<Check> {
    let pf = MethodSpec::phase_fitted();
    let fixed = MethodSpec::fixed();
    let numerov = MethodSpec::numerov();
    let mut out = Vec::new();

    // b0..b3 at the fixed b4, exact.
    let b = fixed_b_rationals();
    let b4 = b[4];
    let dependent = [
        b4 * 70 - Rational64::new(12629, 3024),
        b4 * -56 + Rational64::new(20483, 4032),
        b4 * 28 - Rational64::new(3937, 2016),
        b4 * -8 + Rational64::new(17671, 12096),
    ];
    out.push(check(
        "coefficient identity",
        dependent[..] == b[..4],
        format!("b4 = {b4}"),
    ));

    let worst_sum = (0..50)
        .map(|i| {
            let v = 0.05 + (3.0 - 0.05) * i as f64 / 49.0;
            pf.b_at(v)
                .map(|b| (b[0] + 2.0 * (b[1] + b[2] + b[3] + b[4]) - 5.0).abs() / 5.0)
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max);
    out.push(check(
        "consistency sums (50 v in [0.05, 3])",
        worst_sum < 1e-13,
        format!("max relative deviation {worst_sum:.2e}"),
    ));

    for (m, at, want) in [(&fixed, 0.0, 10), (&pf, 0.0, 10), (&numerov, 0.0, 4)] {
        let got = algebraic_order(m, at);
        out.push(check(
            &format!("algebraic order {}", m.name()),
            matches!(got, Ok(p) if p == want),
            format!("{got:?}, expected {want}"),
        ));
    }

    for (m, want) in [(&fixed, 10.0), (&numerov, 4.0)] {
        let detail;
        let passed = match estimate_phase_lag_order(m) {
            Ok(r) => {
                detail = format!(
                    "order {:.3}, constant {:.4e}",
                    r.order_estimate, r.constant_estimate
                );
                (r.order_estimate - want).abs() <= 0.1
            }
            Err(e) => {
                detail = e.to_string();
                false
            }
        };
        out.push(check(&format!("phase-lag order {}", m.name()), passed, detail));
    }

    let pf_order = estimate_phase_lag_order(&pf);
    out.push(check(
        "phase-lag order phase-fitted",
        matches!(pf_order, Err(Error::IdenticallyZero)),
        match pf_order {
            Err(Error::IdenticallyZero) => "identically zero".into(),
            other => format!("{other:?}"),
        },
    ));
    let worst_pl = (0..100)
        .map(|i| {
            let v = 0.05 + (3.0 - 0.05) * i as f64 / 99.0;
            phase_lag_value(&pf, v).map_or(f64::INFINITY, f64::abs)
        })
        .fold(0.0, f64::max);
    out.push(check(
        "phase-fitted |PL| (100 v in [0.05, 3])",
        worst_pl < 1e-11,
        format!("max {worst_pl:.2e}, domain v < {PHASE_FITTED_V_MAX:.4}"),
    ));
    out
}
