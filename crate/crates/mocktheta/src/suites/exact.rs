//! Exact q-series identities.

use mocktheta_core::qexact::{
    verify_choi_identity, verify_f1_series, verify_theta_split, IdentityReport, MockTheta,
};
use mocktheta_core::special::Rat;
use mocktheta_core::Result as CoreResult;
use num_traits::ToPrimitive;

use super::{Params, Suite};
use crate::report::{CheckResult, Point};

/// Exact checks have tolerance 0; a failure's residual is the coefficient
/// difference at the first mismatching exponent.
pub(crate) fn exact_check(name: &str, order: i64, r: CoreResult<IdentityReport>) -> CheckResult {
    let point = Point::Order(order);
    match r {
        Ok(rep) if rep.passed => CheckResult::new(name, point, 0.0, 0.0)
            .with_note(format!("{} exponents compared", rep.terms_compared)),
        Ok(rep) => match rep.mismatch {
            Some(m) => {
                let diff = (&m.lhs - &m.rhs).to_f64().map(f64::abs).unwrap_or(f64::INFINITY);
                let diff = if diff > 0.0 { diff } else { 1.0 };
                CheckResult::new(name, point, diff, 0.0)
                    .with_note(format!("first mismatch at q^({}/80): {} vs {}", m.exp_num, m.lhs, m.rhs))
            }
            None => CheckResult::failed(name, point, 0.0, "failed without a mismatch record"),
        },
        Err(e) => CheckResult::failed(name, point, 0.0, e.to_string()),
    }
}

pub(crate) fn choi(s: &mut Suite, p: &Params) {
    let n = p.order(50);
    for m in MockTheta::ALL {
        s.push(exact_check(m.name(), n, verify_choi_identity(m, Rat::from_integer(n))));
    }
}

pub(crate) fn f1_series(s: &mut Suite, p: &Params) {
    let n = p.order(50);
    for c in 1..=6 {
        s.push(exact_check(&format!("component {c}"), n, verify_f1_series(c, Rat::from_integer(n))));
    }
}

pub(crate) fn theta_split(s: &mut Suite, p: &Params) {
    let n = p.order(200);
    match verify_theta_split(Rat::from_integer(n)) {
        Ok([a, b]) => {
            s.push(exact_check("theta3 split", n, Ok(a)));
            s.push(exact_check("theta4 split", n, Ok(b)));
        }
        Err(e) => {
            for name in ["theta3 split", "theta4 split"] {
                s.push(CheckResult::failed(name, Point::Order(n), 0.0, e.to_string()));
            }
        }
    }
}
