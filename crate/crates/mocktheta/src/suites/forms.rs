//! The vector-valued forms: decomposition, modular laws, Mordell
//! representation of the correction term.

use std::f64::consts::PI;

use mocktheta_core::qexact::verify_f1_t_phases;
use mocktheta_core::special::Rat;
use mocktheta_core::tenth::{
    correction_vector, f_vector, g_vector, h_vector, identity6, j_vector, mat_mul, mat_vec, shadow_vector,
    sqrt_neg_i_tau, transform_set, Cusp, Family, Vector6,
};
use mocktheta_core::{Complex64, Result as CoreResult};

use super::exact::exact_check;
use super::{eval_tol, Params, Suite};
use crate::report::{CheckResult, Point};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn zip(a: &Vector6, b: &Vector6, f: impl Fn(Complex64, Complex64) -> Complex64) -> Vector6 {
    std::array::from_fn(|k| f(a[k], b[k]))
}

fn map(a: &Vector6, f: impl Fn(Complex64) -> Complex64) -> Vector6 {
    std::array::from_fn(|k| f(a[k]))
}

/// `F = H + G`.
pub(crate) fn decomposition(f: Family, tau: Complex64, et: f64) -> CoreResult<(Vector6, Vector6)> {
    let fv = f_vector(f, tau, et)?.entries;
    let h = h_vector(f, tau, et)?.entries;
    let g = g_vector(f, tau, et)?.entries;
    Ok((fv, zip(&h, &g, |a, b| a + b)))
}

/// `F(−1/τ) = √(−iτ) M F(τ) + J(πi/τ)/√(−iτ)`, optionally with `M` replaced.
pub(crate) fn s_law_with(
    f: Family,
    m: &[[Complex64; 6]; 6],
    tau: Complex64,
    et: f64,
) -> CoreResult<(Vector6, Vector6)> {
    let s = sqrt_neg_i_tau(tau)?;
    let lhs = f_vector(f, -tau.inv(), et)?.entries;
    let mf = mat_vec(m, &f_vector(f, tau, et)?.entries);
    let j = j_vector(f, I * PI / tau, et)?.entries;
    Ok((lhs, zip(&mf, &j, |a, b| s * a + b / s)))
}

pub(crate) fn prop2(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let et = eval_tol(tol);
    for f in Family::ALL {
        for (idx, tau) in p.taus().into_iter().enumerate() {
            s.check_vector(&format!("{} p{idx:02} F=H+G", f.name()), tau.into(), tol, decomposition(f, tau, et));
        }
    }
}

pub(crate) fn theorem1_s(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let et = eval_tol(tol);
    for f in Family::ALL {
        let m = transform_set(f).m;
        let asym = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).map(|(i, j)| (m[i][j] - m[j][i]).norm());
        s.push(CheckResult::new(format!("{} M symmetric", f.name()), Point::None, asym.fold(0.0, f64::max), 1e-12));
        let sq = mat_mul(&m, &m);
        let id = identity6();
        let dev = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).map(|(i, j)| (sq[i][j] - id[i][j]).norm());
        s.push(CheckResult::new(format!("{} M^2 = 1", f.name()), Point::None, dev.fold(0.0, f64::max), 1e-12));
        for (idx, tau) in p.taus().into_iter().enumerate() {
            s.check_vector(&format!("{} p{idx:02} S-law", f.name()), tau.into(), tol, s_law_with(f, &m, tau, et));
        }
        // at the fixed point τ = i the law reads F(i) = M F(i) + J(π)
        let fixed = (|| {
            let fi = f_vector(f, I, et)?.entries;
            let j = j_vector(f, Complex64::new(PI, 0.0), et)?.entries;
            Ok((fi, zip(&mat_vec(&m, &fi), &j, |a, b| a + b)))
        })();
        s.check_vector(&format!("{} fixed point", f.name()), I.into(), tol, fixed);
    }
}

pub(crate) fn theorem1_t(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-9);
    let et = eval_tol(tol);
    for f in Family::ALL {
        let ts = transform_set(f);
        for (idx, tau) in p.taus().into_iter().enumerate() {
            let sides = (|| {
                let lhs = f_vector(f, tau + 1.0, et)?.entries;
                Ok((lhs, mat_vec(&ts.t, &f_vector(f, tau, et)?.entries)))
            })();
            s.check_vector(&format!("{} p{idx:02} T-law", f.name()), tau.into(), tol, sides);
        }
        // (MT)³ is reported, not asserted
        let mt = mat_mul(&ts.m, &ts.t);
        let cube = mat_mul(&mat_mul(&mt, &mt), &mt);
        for (k, row) in cube.iter().enumerate() {
            s.measure(format!("{} (MT)^3 diagonal {}", f.name(), k + 1), row[k]);
        }
        let off = (0..6)
            .flat_map(|i| (0..6).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| cube[i][j].norm())
            .fold(0.0, f64::max);
        s.measure(format!("{} (MT)^3 largest off-diagonal", f.name()), Complex64::new(off, 0.0));
    }
    let n = p.order(50);
    match verify_f1_t_phases(Rat::from_integer(n)) {
        Ok(reports) => {
            for (k, rep) in reports.into_iter().enumerate() {
                s.push(exact_check(&format!("F1 component {} exact T-phase", k + 1), n, Ok(rep)));
            }
        }
        Err(e) => s.push(exact_check("F1 exact T-phases", n, Err(e))),
    }
}

pub(crate) fn prop3(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let et = eval_tol(tol);
    for f in Family::ALL {
        let m = transform_set(f).m;
        for (idx, tau) in p.taus_upto(10).into_iter().enumerate() {
            let sides = (|| {
                let sq = sqrt_neg_i_tau(tau)?;
                let lhs = map(&j_vector(f, I * PI / tau, et)?.entries, |z| z / sq);
                let c = correction_vector(f, tau, Cusp::Zero, et)?.entries;
                Ok((lhs, map(&mat_vec(&m, &c), |z| z * sq)))
            })();
            s.check_vector(&format!("{} p{idx:02} Mordell form", f.name()), tau.into(), tol, sides);
        }
    }
}

pub(crate) fn j_transform(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let et = eval_tol(tol);
    for f in Family::ALL {
        let m = transform_set(f).m;
        for (idx, tau) in p.taus().into_iter().enumerate() {
            let sides = (|| {
                let sq = sqrt_neg_i_tau(tau)?;
                let lhs = j_vector(f, -I * PI * tau, et)?.entries;
                let mj = mat_vec(&m, &j_vector(f, I * PI / tau, et)?.entries);
                Ok((lhs, map(&mj, |z| -z / (sq * sq * sq))))
            })();
            s.check_vector(&format!("{} p{idx:02} J-law", f.name()), tau.into(), tol, sides);
        }
    }
}

pub(crate) fn shadow_s(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let et = eval_tol(tol);
    for f in Family::ALL {
        let m = transform_set(f).m;
        for (idx, tau) in p.taus().into_iter().enumerate() {
            let sides = (|| {
                let sq = sqrt_neg_i_tau(tau)?;
                let lhs = shadow_vector(f, -tau.inv(), et)?.entries;
                let mg = mat_vec(&m, &shadow_vector(f, tau, et)?.entries);
                Ok((lhs, map(&mg, |z| -z * sq * sq * sq)))
            })();
            s.check_vector(&format!("{} p{idx:02} shadow S-law", f.name()), tau.into(), tol, sides);
        }
    }
}

pub(crate) fn completion_st(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let corr_tol = p.tol(1e-7);
    let et = eval_tol(tol);
    for f in Family::ALL {
        let ts = transform_set(f);
        let name = f.name();
        for (idx, tau) in p.taus().into_iter().enumerate() {
            let pt: Point = tau.into();
            let st = -tau.inv();
            let h_s = (|| {
                let sq = sqrt_neg_i_tau(tau)?;
                let mh = mat_vec(&ts.m, &h_vector(f, tau, et)?.entries);
                Ok((h_vector(f, st, et)?.entries, map(&mh, |z| z * sq)))
            })();
            s.check_vector(&format!("{name} p{idx:02} H S-law"), pt, tol, h_s);
            let h_t = (|| Ok((h_vector(f, tau + 1.0, et)?.entries, mat_vec(&ts.t, &h_vector(f, tau, et)?.entries))))();
            s.check_vector(&format!("{name} p{idx:02} H T-law"), pt, tol, h_t);
            let g_s = (|| {
                let sq = sqrt_neg_i_tau(tau)?;
                let g = g_vector(f, tau, et)?.entries;
                let c = correction_vector(f, tau, Cusp::Zero, et)?.entries;
                let mg = mat_vec(&ts.m, &zip(&g, &c, |a, b| a + b));
                Ok((g_vector(f, st, et)?.entries, map(&mg, |z| z * sq)))
            })();
            s.check_vector(&format!("{name} p{idx:02} G S-law"), pt, tol, g_s);
            let g_t = (|| Ok((g_vector(f, tau + 1.0, et)?.entries, mat_vec(&ts.t, &g_vector(f, tau, et)?.entries))))();
            s.check_vector(&format!("{name} p{idx:02} G T-law"), pt, tol, g_t);

            // correction term under S with the lower terminal lifted to iε
            let eps = 1e-4 * st.im;
            let corr = (|| {
                let sq = sqrt_neg_i_tau(tau)?;
                let c = correction_vector(f, tau, Cusp::Zero, et)?.entries;
                let lhs = correction_vector(f, st, Cusp::Above(eps), et)?.entries;
                Ok((lhs, map(&mat_vec(&ts.m, &c), |z| -z * sq)))
            })();
            s.check_vector(&format!("{name} p{idx:02} correction S-law"), pt, corr_tol, corr);
            let stable = (|| {
                let a = correction_vector(f, st, Cusp::Above(eps), et)?.entries;
                let b = correction_vector(f, st, Cusp::Above(eps / 4.0), et)?.entries;
                Ok((a, b))
            })();
            s.check_vector(&format!("{name} p{idx:02} correction eps/4 stability"), pt, corr_tol, stable);
        }
    }
}
