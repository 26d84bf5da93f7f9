//! Partial-fraction and Gaussian-pole lemmas.

use mocktheta_core::lemmas::{gaussian_pole_integral, partial_fractions};
use mocktheta_core::{Complex64, Error as CoreError};

use super::{eval_tol, Params, Suite};
use crate::report::{CheckResult, Point};

pub(crate) fn lemma_pf(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-6);
    let mut cases = vec![(0.0, Complex64::new(0.3, 0.0)), (0.2, Complex64::new(0.7, 0.2))];
    // keep seeded z well inside the strip between the poles ±i/2
    let bs = [-0.3, -0.1, 0.25, 0.4];
    for (idx, tau) in p.taus_upto(8).into_iter().enumerate() {
        cases.push((bs[idx % 4], Complex64::new(tau.re, 0.5 * (tau.im - 1.25))));
    }
    for (b, z) in cases {
        s.check(format!("b={b} z={z}"), z.into(), tol, partial_fractions(b, z, 4000).map(|r| r.residual()));
    }
    let near = Complex64::new(0.0, 0.5 + 1e-9);
    let name = "pole proximity rejected";
    s.push(match partial_fractions(0.0, near, 4000) {
        Err(CoreError::NearSingular(m)) => CheckResult::new(name, near.into(), 0.0, 0.0).with_note(m),
        Err(e) => CheckResult::failed(name, near.into(), 0.0, format!("wrong error: {e}")),
        Ok(_) => CheckResult::failed(name, near.into(), 0.0, "evaluated next to a pole"),
    });
}

pub(crate) fn lemma_int(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-7);
    let i = Complex64::new(0.0, 1.0);
    for (r, t) in [(0.5, tol), (-0.5, tol), (6.0, p.tol(1e-10))] {
        let et = eval_tol(t).min(1e-12);
        s.check(format!("r={r} tau=i"), i.into(), t, gaussian_pole_integral(r, i, et).map(|x| x.residual()));
    }
    let et = eval_tol(tol);
    let rs = [0.5, 1.5, -1.3];
    for (idx, tau) in p.taus_upto(6).into_iter().enumerate() {
        let r = rs[idx % 3];
        s.check(
            format!("p{idx:02} r={r}"),
            Point::from(tau),
            tol,
            gaussian_pole_integral(r, tau, et).map(|x| x.residual()),
        );
    }
}
