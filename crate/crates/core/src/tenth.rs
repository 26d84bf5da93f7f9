//! The six-component vectors of the tenth-order mock theta functions:
//! `F = H + G`, the shadows `g`, the Mordell vectors `J`, and the constant
//! matrices `M`, `T` of their modular transformations.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;

use crate::error::{invalid, Error, Result};
use crate::qexact::MockTheta;
use crate::special::{
    integrate_decaying, pow_neg_i_tau, q_pow, sqrt_branch, theta2, theta3, theta4, zeta,
    QuadratureRule, Rat, TailBound,
};
use crate::zwegers::{
    cusp_integral_from, g_envelope, g_float, g_near_cusp_bound, min_abs_nonzero, vartheta,
    Estimate, IndefLattice, ThetaChar,
};

pub type Vector6 = [Complex64; 6];
pub type Matrix6 = [[Complex64; 6]; 6];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The two vector families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    F1,
    F2,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::F1, Family::F2];

    pub fn name(self) -> &'static str {
        match self {
            Family::F1 => "F1",
            Family::F2 => "F2",
        }
    }
}

/// Six complex entries evaluated at a point, with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormVector {
    pub family: Family,
    pub tau: Complex64,
    pub entries: Vector6,
    pub err: f64,
}

pub fn mat_vec(m: &Matrix6, v: &Vector6) -> Vector6 {
    let mut out = [ZERO; 6];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

pub fn mat_mul(a: &Matrix6, b: &Matrix6) -> Matrix6 {
    let mut out = [[ZERO; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] = (0..6).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn identity6() -> Matrix6 {
    let mut m = [[ZERO; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0);
    }
    m
}

/// Inverse of a monomial (one nonzero per row and column) matrix.
pub fn monomial_inverse(t: &Matrix6) -> Matrix6 {
    let mut out = [[ZERO; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            if t[i][j] != ZERO {
                out[j][i] = t[i][j].inv();
            }
        }
    }
    out
}

/// Multiplier matrices `M` (S-transformation) and `T` (T-transformation).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformSet {
    pub m: Matrix6,
    pub t: Matrix6,
}

/// `M` and `T` for a family, from `(2/√5) sin(π/5)`, `(2/√5) sin(2π/5)` and
/// the roots of unity `ζ₁₀`, `ζ₄₀`, `ζ₅`, `ζ₈₀`.
pub fn transform_set(f: Family) -> TransformSet {
    let k = 2.0 / 5f64.sqrt();
    let s1 = c(k * (PI / 5.0).sin());
    let s2 = c(k * (2.0 * PI / 5.0).sin());
    let mut m = [[ZERO; 6]; 6];
    let mut t = [[ZERO; 6]; 6];
    let mut put = |i: usize, j: usize, v: Complex64| m[i][j] = v;
    match f {
        Family::F1 => {
            put(0, 4, s2);
            put(0, 5, -s1);
            put(1, 4, s1);
            put(1, 5, s2);
            put(2, 2, s2);
            put(2, 3, s1);
            put(3, 2, s1);
            put(3, 3, -s2);
            put(4, 0, s2);
            put(4, 1, s1);
            put(5, 0, -s1);
            put(5, 1, s2);
            t[0][2] = zeta(1, 10);
            t[1][3] = zeta(-1, 10);
            t[2][0] = zeta(1, 10);
            t[3][1] = zeta(-1, 10);
            t[4][4] = zeta(-1, 40);
            t[5][5] = zeta(-9, 40);
        }
        Family::F2 => {
            put(0, 2, s2);
            put(0, 3, -s1);
            put(1, 2, s1);
            put(1, 3, s2);
            put(2, 0, s2);
            put(2, 1, s1);
            put(3, 0, -s1);
            put(3, 1, s2);
            put(4, 4, s1);
            put(4, 5, -s2);
            put(5, 4, -s2);
            put(5, 5, -s1);
            t[0][0] = zeta(1, 5);
            t[1][1] = zeta(-1, 5);
            t[2][4] = zeta(-1, 80);
            t[3][5] = zeta(-9, 80);
            t[4][2] = zeta(-1, 80);
            t[5][3] = zeta(-9, 80);
        }
    }
    TransformSet { m, t }
}

fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(invalid!("tau must lie in the upper half-plane, got {tau}"));
    }
    Ok(())
}

/// Numeric value of a mock theta function at `|w| < 1` by direct summation.
///
/// Each summand is bounded by `|w|^{lead}/Π(1−|w|^k)`, which certifies
/// the geometric tail used to stop.
pub fn mock_theta_numeric(name: MockTheta, w: Complex64, tol: f64) -> Result<Estimate> {
    let r = w.norm();
    if !(r < 1.0) {
        return Err(invalid!("|w| = {r} is not below 1"));
    }
    // lower bound for every finite Pochhammer product that occurs
    let mut pmin = 1.0;
    let mut k = 1;
    loop {
        let f = r.powi(k);
        pmin *= 1.0 - f;
        if f < 1e-18 {
            break;
        }
        k += 1;
    }
    let mut sum = ZERO;
    let one = c(1.0);
    // running denominator and its length in factors
    let mut den = one;
    let mut factors: i32 = 0;
    for n in 0..100_000i64 {
        let (lead, sign, len) = match name {
            MockTheta::Phi => (n * (n + 1) / 2, 1.0, n + 1),
            MockTheta::Psi => ((n + 1) * (n + 2) / 2, 1.0, n + 1),
            MockTheta::X => (n * n, if n % 2 == 0 { 1.0 } else { -1.0 }, 2 * n),
            MockTheta::Chi => ((n + 1) * (n + 1), if n % 2 == 0 { 1.0 } else { -1.0 }, 2 * n + 1),
        };
        let tail = r.powi(lead as i32) / (pmin * (1.0 - r));
        if tail < tol * 1e-2 {
            return Ok(Estimate { value: sum, error: tail });
        }
        while (factors as i64) < len {
            let j = factors as i64;
            den *= match name {
                // (w; w²)_n = Π (1 − w^{2j+1})
                MockTheta::Phi | MockTheta::Psi => one - w.powi((2 * j + 1) as i32),
                // (−w; w)_n = Π (1 + w^{j+1})
                MockTheta::X | MockTheta::Chi => one + w.powi((j + 1) as i32),
            };
            factors += 1;
        }
        sum += w.powi(lead as i32) / den * sign;
    }
    Err(Error::NonConvergence(format!("{} series did not converge", name.name())))
}

fn qp(tau: Complex64, n: i64, d: i64) -> Result<Complex64> {
    q_pow(tau, Rat::new(n, d))
}

/// `F⁽¹⁾` or `F⁽²⁾` at `τ` from the mock theta series.
pub fn f_vector(f: Family, tau: Complex64, tol: f64) -> Result<FormVector> {
    check_tau(tau)?;
    let t = tol * 1e-2;
    let mut err = 0.0;
    let mut ev = |name, w| -> Result<Complex64> {
        let e = mock_theta_numeric(name, w, t)?;
        err += e.error;
        Ok(e.value)
    };
    let entries = match f {
        Family::F1 => {
            let h = qp(tau, 1, 2)?;
            let q = qp(tau, 1, 1)?;
            [
                qp(tau, 1, 10)? * ev(MockTheta::Phi, h)?,
                qp(tau, -1, 10)? * ev(MockTheta::Psi, h)?,
                qp(tau, 1, 10)? * ev(MockTheta::Phi, -h)?,
                qp(tau, -1, 10)? * ev(MockTheta::Psi, -h)?,
                qp(tau, -1, 40)? * ev(MockTheta::X, q)?,
                qp(tau, -9, 40)? * ev(MockTheta::Chi, q)?,
            ]
        }
        Family::F2 => {
            let h = qp(tau, 1, 2)?;
            let q = qp(tau, 1, 1)?;
            [
                qp(tau, 1, 5)? * ev(MockTheta::Phi, q)? * SQRT_2,
                qp(tau, -1, 5)? * ev(MockTheta::Psi, q)? * SQRT_2,
                qp(tau, -1, 80)? * ev(MockTheta::X, h)?,
                qp(tau, -9, 80)? * ev(MockTheta::Chi, h)?,
                qp(tau, -1, 80)? * ev(MockTheta::X, -h)?,
                qp(tau, -9, 80)? * ev(MockTheta::Chi, -h)?,
            ]
        }
    };
    Ok(FormVector { family: f, tau, entries, err })
}

/// `θ₄₃₂ = (θ₄, θ₃, θ₂)(τ)` or `θ₄₂₂ = (√2θ₄(2τ), θ₂(τ/2), θ₂((τ+1)/2))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaTriple {
    T432,
    T422,
}

/// Values of a theta triple together with its S and T matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaVectors {
    pub values: [Complex64; 3],
    pub s: [[Complex64; 3]; 3],
    pub t: [[Complex64; 3]; 3],
}

pub fn theta_vectors(kind: ThetaTriple, tau: Complex64) -> Result<ThetaVectors> {
    check_tau(tau)?;
    let one = c(1.0);
    let sqrt_i = zeta(1, 8);
    let mut s = [[ZERO; 3]; 3];
    let mut t = [[ZERO; 3]; 3];
    let values = match kind {
        ThetaTriple::T432 => {
            s[0][2] = one;
            s[1][1] = one;
            s[2][0] = one;
            t[0][1] = one;
            t[1][0] = one;
            t[2][2] = sqrt_i;
            [theta4(tau)?, theta3(tau)?, theta2(tau)?]
        }
        ThetaTriple::T422 => {
            s[0][1] = one;
            s[1][0] = one;
            s[2][2] = one;
            t[0][0] = one;
            t[1][2] = one;
            t[2][1] = sqrt_i;
            [theta4(tau * 2.0)? * SQRT_2, theta2(tau / 2.0)?, theta2((tau + 1.0) / 2.0)?]
        }
    };
    Ok(ThetaVectors { values, s, t })
}

fn nonsingular(x: Complex64, what: &str) -> Result<Complex64> {
    if x.norm() < 1e-12 {
        return Err(Error::NearSingular(format!("{what} = {x}")));
    }
    Ok(x)
}

/// Completion `H⁽¹⁾` or `H⁽²⁾` from indefinite theta series.
pub fn h_vector(f: Family, tau: Complex64, tol: f64) -> Result<FormVector> {
    check_tau(tau)?;
    let l = IndefLattice::TENTH;
    let inner = tol * 1e-2;
    let mut err = 0.0;
    let mut th = |v: i64, k: i64, w: i64, at: Complex64| -> Result<Complex64> {
        let e = vartheta(&l, &ThetaChar::tenth(v, k, w), at, inner)?;
        err += e.error;
        Ok(e.value)
    };
    let entries = match f {
        Family::F1 => {
            let t4 = nonsingular(theta4(tau)?, "theta4")?;
            let t3 = nonsingular(theta3(tau)?, "theta3")?;
            let t2 = nonsingular(theta2(tau)?, "theta2")?;
            let v1 = th(1, 0, 0, tau)?;
            let v1x = th(1, 1, 0, tau)?;
            let v2 = th(2, 0, 0, tau)?;
            let v2x = th(2, 1, 0, tau)?;
            let v3 = th(3, 0, 0, tau)?;
            let v3x = th(3, 1, 0, tau)?;
            let v4 = th(4, 0, 0, tau)?;
            let v4x = th(4, 1, 0, tau)?;
            [
                (v1 - v1x - v4 + v4x) / (t4 * 2.0),
                (v2 - v2x - v3 + v3x) / (t4 * 2.0),
                (v1 - v1x + v4 + v4x) / (t3 * 2.0),
                (-v2 - v2x - v3 + v3x) / (t3 * 2.0),
                v1 / t2,
                v3 / t2,
            ]
        }
        Family::F2 => {
            let half = tau / 2.0;
            let d1 = nonsingular(theta4(tau * 2.0)? * SQRT_2, "sqrt2 theta4(2 tau)")?;
            let d2 = nonsingular(theta2(half)?, "theta2(tau/2)")?;
            let d3 = nonsingular(theta2((tau + 1.0) / 2.0)?, "theta2((tau+1)/2)")?;
            [
                zeta(-1, 5) * th(2, 0, 1, half)? / d1,
                zeta(-2, 5) * th(4, 0, 1, half)? / d1,
                th(1, 0, 0, half)? / d2,
                th(3, 0, 0, half)? / d2,
                zeta(-3, 80) * th(1, 0, 1, half)? / d3,
                zeta(21, 80) * th(3, 0, 1, half)? / d3,
            ]
        }
    };
    Ok(FormVector { family: f, tau, entries, err })
}

/// One term `coef · g_{s,t}(κτ)` of a shadow component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShadowTerm {
    pub coef: Complex64,
    pub s: Rat,
    pub t: Rat,
    pub kappa: i64,
}

impl ShadowTerm {
    fn eval(&self, z: Complex64, tol: f64) -> Complex64 {
        let (s, t) = (self.s.to_f64().unwrap_or(0.0), self.t.to_f64().unwrap_or(0.0));
        self.coef * g_float(s, t, z * self.kappa as f64, tol)
    }

    fn sf(&self) -> f64 {
        self.s.to_f64().unwrap_or(0.0)
    }
}

/// The shadow components as sums of `g_{s,t}(κτ)`.
pub fn shadow_terms(f: Family) -> [Vec<ShadowTerm>; 6] {
    let r = |n: i64, d: i64| Rat::new(n, d);
    let term = |coef: Complex64, s: Rat, t: Rat, kappa: i64| ShadowTerm { coef, s, t, kappa };
    match f {
        Family::F1 => {
            let k = 20f64.sqrt();
            let g = |a: f64, u: i64| term(c(a * k), r(u, 20), r(0, 1), 20);
            [
                alloc::vec![g(-1.0, 4), g(-1.0, 6)],
                alloc::vec![g(-1.0, 2), g(-1.0, 8)],
                alloc::vec![g(1.0, 4), g(-1.0, 6)],
                alloc::vec![g(-1.0, 2), g(1.0, 8)],
                alloc::vec![g(1.0, 1), g(-1.0, 9)],
                alloc::vec![g(1.0, 3), g(-1.0, 7)],
            ]
        }
        Family::F2 => {
            let k = 10f64.sqrt();
            let g = |a: Complex64, u: i64, t: Rat| term(a * k, r(u, 20), t, 10);
            let (h, z) = (r(1, 2), r(0, 1));
            [
                alloc::vec![g(-zeta(-1, 5) * SQRT_2, 8, h)],
                alloc::vec![g(zeta(2, 5) * SQRT_2, 4, h)],
                alloc::vec![g(c(1.0), 1, z), g(c(-1.0), 9, z)],
                alloc::vec![g(c(1.0), 3, z), g(c(-1.0), 7, z)],
                alloc::vec![g(zeta(-1, 40), 1, h), g(-zeta(-9, 40), 9, h)],
                alloc::vec![g(zeta(-3, 40), 3, h), g(zeta(-7, 40), 7, h)],
            ]
        }
    }
}

/// Shadow vector `g⁽¹⁾` or `g⁽²⁾`.
pub fn shadow_vector(f: Family, tau: Complex64, tol: f64) -> Result<FormVector> {
    check_tau(tau)?;
    let terms = shadow_terms(f);
    let mut entries = [ZERO; 6];
    for (e, ts) in entries.iter_mut().zip(terms.iter()) {
        *e = ts.iter().map(|t| t.eval(tau, tol * 1e-2)).sum();
    }
    Ok(FormVector { family: f, tau, entries, err: tol * 1e-2 })
}

/// `∫_0^∞ Σ_k coef_k g_k(z₀ + i t) w(t) dt`-type integrals share this bound:
/// `|component(x + i(h+t))| ≤ e^{−π σ_min² κ t} Σ |coef| env(s, κh)`.
fn far_bound(ts: &[ShadowTerm], h: f64) -> (f64, f64) {
    let mut rate = f64::INFINITY;
    let mut scale = 0.0;
    for t in ts {
        let k = t.kappa as f64;
        rate = rate.min(PI * min_abs_nonzero(t.sf()).powi(2) * k);
        scale += t.coef.norm() * g_envelope(t.sf(), k * h, 1e-30);
    }
    (rate, scale)
}

/// Period integrals `G = −i ∫_{−τ̄}^{i∞} g(z)/√(−i(z+τ)) dz`, taken along
/// `z = −τ̄ + it` where the radicand is `2τ₂ + t`.
pub fn g_vector(f: Family, tau: Complex64, tol: f64) -> Result<FormVector> {
    check_tau(tau)?;
    let terms = shadow_terms(f);
    let y = tau.im;
    let inner = tol * 1e-3;
    let rule = QuadratureRule::default();
    let mut entries = [ZERO; 6];
    let mut err = 0.0;
    for (e, ts) in entries.iter_mut().zip(terms.iter()) {
        let (rate, scale) = far_bound(ts, y);
        let res = integrate_decaying(
            |t| {
                let z = Complex64::new(-tau.re, y + t);
                let g: Complex64 = ts.iter().map(|term| term.eval(z, inner)).sum();
                g / sqrt_branch(c(2.0 * y + t))
            },
            0.0,
            TailBound::Exponential { rate, scale: scale / (2.0 * y).sqrt() },
            tol,
            &rule,
        )?;
        *e = res.value;
        err += res.error;
    }
    Ok(FormVector { family: f, tau, entries, err })
}

/// Starting point of the correction integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cusp {
    /// `i∫_0^{i∞}`.
    Zero,
    /// `i∫_1^{i∞}`.
    One,
    /// `i∫_{iε}^{i∞}`.
    Above(f64),
}

/// Correction vector `i ∫_{z₀}^{i∞} g(z)/√(−i(z+τ)) dz` along a vertical path.
pub fn correction_vector(f: Family, tau: Complex64, cusp: Cusp, tol: f64) -> Result<FormVector> {
    check_tau(tau)?;
    let terms = shadow_terms(f);
    let inner = tol * 1e-3;
    let (z0, shift) = match cusp {
        Cusp::Zero => (ZERO, 0.0),
        Cusp::One => (c(1.0), 0.0),
        Cusp::Above(eps) => {
            if !(eps > 0.0) {
                return Err(invalid!("regularization height must be positive"));
            }
            (Complex64::new(0.0, eps), eps)
        }
    };
    let mut entries = [ZERO; 6];
    let mut err = 0.0;
    for (e, ts) in entries.iter_mut().zip(terms.iter()) {
        // decay beyond t = 1 measured from the path's start height
        let (rate, scale1) = far_bound(ts, shift + 1.0);
        let scale = scale1 * rate.exp() / radicand_floor(tau);
        let near = |t: f64| -> f64 {
            let t = t + shift;
            ts.iter()
                .map(|term| {
                    let k = term.kappa as f64;
                    // at the cusp 1, κ translations move t by κ(s + 1/2)
                    let tc = match cusp {
                        Cusp::One => term.t.to_f64().unwrap_or(0.0) + k * (term.sf() + 0.5),
                        _ => term.t.to_f64().unwrap_or(0.0),
                    };
                    term.coef.norm() * g_near_cusp_bound(tc, k, t)
                })
                .sum::<f64>()
                / radicand_floor(tau)
        };
        let res = cusp_integral_from(|z| ts.iter().map(|term| term.eval(z, inner)).sum(), near, rate, scale, z0, tau, tol)?;
        *e = res.value * I;
        err += res.error;
    }
    Ok(FormVector { family: f, tau, entries, err })
}

// |√(−i(z+τ))| ≥ √(Im τ) along vertical paths z = x₀ + it, t ≥ 0
fn radicand_floor(tau: Complex64) -> f64 {
    tau.im.sqrt()
}

fn cosh_ratio(j: f64, w: Complex64) -> Complex64 {
    // cosh(jw)/cosh(5w) for Re w ≥ 0 without overflow
    let one = c(1.0);
    ((w * (j.abs() - 5.0)).exp()) * (one + (w * (-2.0 * j.abs())).exp()) / (one + (w * -10.0).exp())
}

fn one_minus_exp(z: Complex64) -> Complex64 {
    // 1 − e^{−z}
    if z.norm() < 1e-3 {
        z - z * z / 2.0 + z * z * z / 6.0 - z * z * z * z / 24.0
    } else {
        c(1.0) - (-z).exp()
    }
}

fn sinh_ratio(j: f64, w: Complex64) -> Complex64 {
    // sinh(jw)/sinh(5w) for Re w > 0
    let sign = if j < 0.0 { -1.0 } else { 1.0 };
    let ja = j.abs();
    (w * (ja - 5.0)).exp() * one_minus_exp(w * (2.0 * ja)) / one_minus_exp(w * 10.0) * sign
}

fn mordell(j: f64, beta: Complex64, tol: f64, cosh: bool) -> Result<Complex64> {
    if !(beta.re > 0.0) {
        return Err(invalid!("Mordell integrals need Re beta > 0, got {beta}"));
    }
    if j.abs() > 5.0 {
        return Err(invalid!("|j| = {} exceeds 5", j.abs()));
    }
    let rr = beta.re;
    // |ratio| ≤ coth(5 Re β x), decreasing in x
    let bound = move |t: f64| -> f64 {
        let coth = 1.0 / (5.0 * rr * t).tanh();
        coth * 0.5 * (PI / (5.0 * rr)).sqrt() * crate::special::erfc_real((5.0 * rr).sqrt() * t)
    };
    let integral = integrate_decaying(
        |x| {
            let w = beta * x;
            let ratio = if cosh { cosh_ratio(j, w) } else { sinh_ratio(j, w) };
            (-beta * 5.0 * x * x).exp() * ratio
        },
        0.0,
        TailBound::Custom(&bound),
        tol,
        &QuadratureRule::default(),
    )?;
    Ok(integral.value)
}

/// `K_j(β) = ∫_0^∞ e^{−5βx²} cosh(jβx)/cosh(5βx) dx`, `Re β > 0`.
pub fn mordell_k(j: Rat, beta: Complex64, tol: f64) -> Result<Complex64> {
    mordell(j.to_f64().unwrap_or(0.0), beta, tol, true)
}

/// `L_j(β) = ∫_0^∞ e^{−5βx²} sinh(jβx)/sinh(5βx) dx`, `Re β > 0`.
pub fn mordell_l(j: Rat, beta: Complex64, tol: f64) -> Result<Complex64> {
    mordell(j.to_f64().unwrap_or(0.0), beta, tol, false)
}

/// Mordell vectors `J⁽¹⁾(β)`, `J⁽²⁾(β)`.
pub fn j_vector(f: Family, beta: Complex64, tol: f64) -> Result<FormVector> {
    let t = tol * 1e-2;
    let k = |n: i64, d: i64, b: Complex64| mordell_k(Rat::new(n, d), b, t);
    let l = |n: i64, d: i64, b: Complex64| mordell_l(Rat::new(n, d), b, t);
    let entries = match f {
        Family::F1 => {
            let s = 20f64.sqrt();
            [
                -k(1, 1, beta)? * s,
                -k(3, 1, beta)? * s,
                l(1, 1, beta)? * s,
                -l(3, 1, beta)? * s,
                l(4, 1, beta)? * s,
                l(2, 1, beta)? * s,
            ]
        }
        Family::F2 => {
            let s = 40f64.sqrt();
            let (b2, bh) = (beta * 2.0, beta / 2.0);
            [
                -k(1, 1, b2)? * SQRT_2 * s,
                -k(3, 1, b2)? * SQRT_2 * s,
                l(4, 1, bh)? * 0.5 * s,
                l(2, 1, bh)? * 0.5 * s,
                (k(9, 2, b2)? - k(1, 2, b2)?) * s,
                (k(3, 2, b2)? + k(7, 2, b2)?) * s,
            ]
        }
    };
    Ok(FormVector { family: f, tau: beta, entries, err: tol })
}

/// `√(−iτ)`.
pub fn sqrt_neg_i_tau(tau: Complex64) -> Result<Complex64> {
    pow_neg_i_tau(tau, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::{mock_theta_series, EXP_DEN};
    use num_traits::ToPrimitive;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn matrices_are_involutions() {
        for f in Family::ALL {
            let ts = transform_set(f);
            let sq = mat_mul(&ts.m, &ts.m);
            let id = identity6();
            for i in 0..6 {
                for j in 0..6 {
                    assert!((sq[i][j] - id[i][j]).norm() < 1e-12);
                    assert!((ts.m[i][j] - ts.m[j][i]).norm() < 1e-15);
                }
                assert_eq!(ts.t[i].iter().filter(|v| **v != ZERO).count(), 1);
            }
        }
        let m1 = transform_set(Family::F1).m;
        let k = 2.0 / 5f64.sqrt();
        assert!((m1[0][4].re - k * (2.0 * PI / 5.0).sin()).abs() < 1e-15);
        assert!((m1[0][5].re + k * (PI / 5.0).sin()).abs() < 1e-15);
        let t2 = transform_set(Family::F2).t;
        assert!((t2[0][0] - zeta(1, 5)).norm() < 1e-15);
        assert!((t2[2][4] - zeta(-1, 80)).norm() < 1e-15);
    }

    #[test]
    fn f1_component5_matches_exact_series() {
        let tau = Complex64::new(0.0, 1.3);
        let v = f_vector(Family::F1, tau, 1e-13).unwrap();
        let series = mock_theta_series(MockTheta::X, Rat::from_integer(40)).unwrap();
        let mut sum = ZERO;
        for (e, coef) in series.terms() {
            sum += q_pow(tau, Rat::new(e, EXP_DEN)).unwrap() * coef.to_f64().unwrap();
        }
        sum *= q_pow(tau, Rat::new(-1, 40)).unwrap();
        assert!(close(v.entries[4], sum, 1e-12));
    }

    #[test]
    fn decomposition_f1_one_point() {
        let tau = Complex64::new(0.21, 1.1);
        let f = f_vector(Family::F1, tau, 1e-12).unwrap();
        let h = h_vector(Family::F1, tau, 1e-12).unwrap();
        let g = g_vector(Family::F1, tau, 1e-12).unwrap();
        for i in 0..6 {
            let r = (f.entries[i] - h.entries[i] - g.entries[i]).norm();
            assert!(r < 1e-9, "component {}: residual {r:e}", i + 1);
        }
    }

    #[test]
    fn mordell_real_beta() {
        let b = c(1.3);
        let half = 0.5 * (PI / (5.0 * 1.3)).sqrt();
        let l5 = mordell_l(Rat::from_integer(5), b, 1e-13).unwrap();
        assert!((l5.re - half).abs() < 1e-12);
        let k1 = mordell_k(Rat::from_integer(1), b, 1e-13).unwrap();
        assert!(k1.re > 0.0 && k1.re < half && k1.im.abs() < 1e-15);
        assert!(mordell_k(Rat::from_integer(1), c(-1.0), 1e-10).is_err());
    }
}
