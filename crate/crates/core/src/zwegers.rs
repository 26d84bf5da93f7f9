//! Indefinite theta series of a rank-2 lattice of signature (1,1).
//!
//! `ϑ_{a,b}` replaces the sharp cone cut-off `sgn B(c₁,ν) − sgn B(c₂,ν)` by
//! error functions; the difference is carried by unary series `R_{s,t}`
//! against theta series of the rank-1 lattices orthogonal to `c₁`, `c₂`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::sync::atomic::{AtomicI64, Ordering};

use num_complex::Complex64;
use num_integer::Integer;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::qexact::to_grid;
use crate::special::{
    cis_turns, erfcx_real, integrate_decaying, pow_neg_i_tau, sgn, sqrt_branch, Integral,
    QuadratureRule, Rat, TailBound,
};

pub type Vec2 = [Rat; 2];

/// Default cap on the lattice box radius.
pub const DEFAULT_MAX_BOX: i64 = 300;

static MAX_BOX: AtomicI64 = AtomicI64::new(DEFAULT_MAX_BOX);

/// Sets the process-wide cap on the box radius used by [`vartheta`].
pub fn set_max_box(radius: i64) {
    MAX_BOX.store(radius.max(1), Ordering::Relaxed);
}

pub fn max_box() -> i64 {
    MAX_BOX.load(Ordering::Relaxed)
}

/// Numeric value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

pub fn rv(n: i64, d: i64) -> Vec2 {
    [Rat::new(n, d), Rat::new(n, d)]
}

fn to_f(v: &Vec2) -> [f64; 2] {
    [v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0)]
}

fn ri(v: [i64; 2]) -> Vec2 {
    [Rat::from_integer(v[0]), Rat::from_integer(v[1])]
}

/// Symmetric integer Gram matrix `A` with two reference vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndefLattice {
    pub a: [[i64; 2]; 2],
    pub c1: [i64; 2],
    pub c2: [i64; 2],
}

impl IndefLattice {
    /// `A = [[4,6],[6,4]]`, `c₁ = (−2,3)`, `c₂ = (−3,2)`.
    pub const TENTH: IndefLattice = IndefLattice { a: [[4, 6], [6, 4]], c1: [-2, 3], c2: [-3, 2] };

    pub fn new(a: [[i64; 2]; 2], c1: [i64; 2], c2: [i64; 2]) -> Result<Self> {
        let l = IndefLattice { a, c1, c2 };
        let problems = validate_lattice(&l);
        if problems.is_empty() {
            Ok(l)
        } else {
            Err(Error::InvalidInput(problems.join("; ")))
        }
    }

    pub fn det(&self) -> i64 {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    /// `A x`.
    pub fn apply(&self, x: &Vec2) -> Vec2 {
        let a = |i: usize, j: usize| Rat::from_integer(self.a[i][j]);
        [a(0, 0) * x[0] + a(0, 1) * x[1], a(1, 0) * x[0] + a(1, 1) * x[1]]
    }

    /// `A⁻¹ x`.
    pub fn solve(&self, x: &Vec2) -> Vec2 {
        let d = Rat::from_integer(self.det());
        let a = |i: usize, j: usize| Rat::from_integer(self.a[i][j]);
        [(a(1, 1) * x[0] - a(0, 1) * x[1]) / d, (a(0, 0) * x[1] - a(1, 0) * x[0]) / d]
    }

    pub fn c(&self, which: usize) -> [i64; 2] {
        if which == 1 { self.c1 } else { self.c2 }
    }
}

/// `B(x,y) = xᵀAy`.
pub fn bilinear(l: &IndefLattice, x: &Vec2, y: &Vec2) -> Rat {
    let ay = l.apply(y);
    x[0] * ay[0] + x[1] * ay[1]
}

/// `Q(x) = B(x,x)/2`.
pub fn quad(l: &IndefLattice, x: &Vec2) -> Rat {
    bilinear(l, x, x) / Rat::from_integer(2)
}

/// Lists every violated lattice condition; empty when the lattice is valid.
pub fn validate_lattice(l: &IndefLattice) -> Vec<String> {
    let mut out = Vec::new();
    if l.a[0][1] != l.a[1][0] {
        out.push(String::from("A is not symmetric"));
    }
    if l.det() >= 0 {
        out.push(format!("det A = {} is not negative", l.det()));
    }
    let (c1, c2) = (ri(l.c1), ri(l.c2));
    let q1 = quad(l, &c1);
    let q2 = quad(l, &c2);
    let b12 = bilinear(l, &c1, &c2);
    if !q1.is_negative() {
        out.push(format!("Q(c1) = {q1} is not negative"));
    }
    if !q2.is_negative() {
        out.push(format!("Q(c2) = {q2} is not negative"));
    }
    if !b12.is_negative() {
        out.push(format!("B(c1,c2) = {b12} is not negative"));
    }
    for (name, c) in [("c1", l.c1), ("c2", l.c2)] {
        if c[0].gcd(&c[1]) != 1 {
            out.push(format!("{name} = ({}, {}) is not primitive", c[0], c[1]));
        }
    }
    out
}

/// Characteristics `(a, b)` of `ϑ_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaChar {
    pub a: Vec2,
    pub b: Vec2,
}

impl ThetaChar {
    pub fn new(a: Vec2, b: Vec2) -> Result<Self> {
        for x in a.iter().chain(b.iter()) {
            to_grid(*x)?;
        }
        Ok(ThetaChar { a, b })
    }

    /// `a = (v/10)e + (k/2)e_x`, `b = (w/20)e`.
    pub fn tenth(v: i64, k: i64, w: i64) -> Self {
        let a = [Rat::new(v, 10) + Rat::new(k, 2), Rat::new(v, 10)];
        ThetaChar { a, b: rv(w, 20) }
    }
}

/// Characteristics `(s, t)` of `g_{s,t}` and `R_{s,t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnaryChar {
    pub s: Rat,
    pub t: Rat,
}

impl UnaryChar {
    pub fn new(s: Rat, t: Rat) -> Self {
        UnaryChar { s, t }
    }
}

fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(invalid!("tau must lie in the upper half-plane, got {tau}"));
    }
    Ok(())
}

/// Float copy of the lattice data used in the inner loops.
struct Frame {
    a: [[f64; 2]; 2],
    c: [[f64; 2]; 2],
    neg_q: [f64; 2],
}

impl Frame {
    fn new(l: &IndefLattice) -> Self {
        let f = |v: [i64; 2]| [v[0] as f64, v[1] as f64];
        let a = [[l.a[0][0] as f64, l.a[0][1] as f64], [l.a[1][0] as f64, l.a[1][1] as f64]];
        let c = [f(l.c1), f(l.c2)];
        let neg_q = [
            -quad(l, &ri(l.c1)).to_f64().unwrap_or(0.0),
            -quad(l, &ri(l.c2)).to_f64().unwrap_or(0.0),
        ];
        Frame { a, c, neg_q }
    }

    fn b(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        x[0] * (self.a[0][0] * y[0] + self.a[0][1] * y[1]) + x[1] * (self.a[1][0] * y[0] + self.a[1][1] * y[1])
    }
}

/// Sums `f(n)` over `n ∈ ℤ²` with `lo < max(|n₁|,|n₂|) ≤ hi` (`lo = −1`
/// includes the origin).
fn shell<F: FnMut(i64, i64) -> Complex64>(lo: i64, hi: i64, mut f: F) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for n1 in -hi..=hi {
        for n2 in -hi..=hi {
            if n1.abs().max(n2.abs()) > lo {
                acc += f(n1, n2);
            }
        }
    }
    acc
}

/// Grows the box `8, 16, 32, …` (capped at [`max_box`]) until the last
/// shell contributes less than `tol/10`.
fn box_doubling<F: FnMut(i64, i64) -> Complex64>(tol: f64, mut f: F) -> Result<Estimate> {
    let cap = max_box();
    let mut r = 8.min(cap);
    let mut total = shell(-1, r, &mut f);
    loop {
        if r >= cap {
            return Err(Error::NonConvergence(format!("lattice box exceeded radius {cap}")));
        }
        let next = (2 * r).min(cap);
        let inc = shell(r, next, &mut f);
        total += inc;
        r = next;
        if !(total.re.is_finite() && total.im.is_finite()) {
            return Err(Error::NonConvergence("non-finite lattice sum".into()));
        }
        if inc.norm() < tol / 10.0 {
            return Ok(Estimate { value: total, error: inc.norm() });
        }
    }
}

/// Summand of `ϑ_{a,b}(τ)` at `ν`, with the error-function weights folded
/// into the exponent so that no intermediate overflows.
fn vartheta_term(fr: &Frame, nu: [f64; 2], b: [f64; 2], tau: Complex64) -> Complex64 {
    let (x, y) = (tau.re, tau.im);
    let qn = 0.5 * fr.b(nu, nu);
    let mut modulus = 0.0;
    let mut sg = [0.0; 2];
    for i in 0..2 {
        let bc = fr.b(fr.c[i], nu);
        sg[i] = sgn(bc);
        let v = bc * bc * y / fr.neg_q[i];
        // β(v)|q^{Q(ν)}| = erfcx(√(πv)) e^{−πv − 2πyQ(ν)}
        let part = sg[i] * erfcx_real((PI * v).sqrt()) * (-PI * v - 2.0 * PI * y * qn).exp();
        modulus += if i == 0 { -part } else { part };
    }
    if sg[0] != sg[1] {
        modulus += (sg[0] - sg[1]) * (-2.0 * PI * y * qn).exp();
    }
    if modulus == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    cis_turns(qn * x + fr.b(nu, b)) * modulus
}

/// `ϑ_{a,b}(τ)` by box summation.
pub fn vartheta(l: &IndefLattice, ch: &ThetaChar, tau: Complex64, tol: f64) -> Result<Estimate> {
    check_tau(tau)?;
    let fr = Frame::new(l);
    let a = to_f(&ch.a);
    let b = to_f(&ch.b);
    box_doubling(tol, |n1, n2| vartheta_term(&fr, [n1 as f64 + a[0], n2 as f64 + a[1]], b, tau))
}

fn sgn_sum_term(fr: &Frame, nu: [f64; 2], b: [f64; 2], tau: Complex64) -> Complex64 {
    let d = sgn(fr.b(fr.c[0], nu)) - sgn(fr.b(fr.c[1], nu));
    if d == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let qn = 0.5 * fr.b(nu, nu);
    cis_turns(qn * tau.re + fr.b(nu, b)) * (d * (-2.0 * PI * tau.im * qn).exp())
}

/// Sharp-cutoff sum `Σ {sgn B(c₁,ν) − sgn B(c₂,ν)} q^{Q(ν)} e^{2πiB(ν,b)}`
/// over `max(|ν₁−a₁|,|ν₂−a₂|) ≤ radius`.
pub fn sgn_sum(l: &IndefLattice, ch: &ThetaChar, tau: Complex64, radius: i64) -> Result<Complex64> {
    check_tau(tau)?;
    if radius < 0 {
        return Err(invalid!("box radius {radius} is negative"));
    }
    let fr = Frame::new(l);
    let a = to_f(&ch.a);
    let b = to_f(&ch.b);
    Ok(shell(-1, radius, |n1, n2| sgn_sum_term(&fr, [n1 as f64 + a[0], n2 as f64 + a[1]], b, tau)))
}

/// [`sgn_sum`] with the box grown as in [`vartheta`].
pub fn sgn_sum_converged(l: &IndefLattice, ch: &ThetaChar, tau: Complex64, tol: f64) -> Result<Estimate> {
    check_tau(tau)?;
    let fr = Frame::new(l);
    let a = to_f(&ch.a);
    let b = to_f(&ch.b);
    box_doubling(tol, |n1, n2| sgn_sum_term(&fr, [n1 as f64 + a[0], n2 as f64 + a[1]], b, tau))
}

/// Visits `σ ∈ ℤ + s` outward from `start`, alternating sides, until `done`
/// holds on both sides.
fn outward<F, D>(s: f64, start: f64, mut term: F, done: D) -> Complex64
where
    F: FnMut(f64) -> Complex64,
    D: Fn(f64, f64) -> bool,
{
    // first lattice point at or above start
    let base = s + (start - s).ceil();
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut up_done, mut down_done) = (false, false);
    let mut k = 0.0;
    while !(up_done && down_done) {
        if !up_done {
            let sigma = base + k;
            let t = term(sigma);
            acc += t;
            up_done = done(sigma, t.norm());
        }
        if !down_done {
            let sigma = base - 1.0 - k;
            let t = term(sigma);
            acc += t;
            down_done = done(sigma, t.norm());
        }
        k += 1.0;
        if k > 1e7 {
            break;
        }
    }
    acc
}

/// `g_{s,t}(τ) = Σ_{σ∈ℤ+s} σ q^{σ²/2} e^{2πiσt}`.
pub fn g_unary(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<Complex64> {
    check_tau(tau)?;
    let (s, t) = (u.s.to_f64().unwrap_or(0.0), u.t.to_f64().unwrap_or(0.0));
    Ok(g_float(s, t, tau, tol))
}

pub(crate) fn g_float(s: f64, t: f64, tau: Complex64, tol: f64) -> Complex64 {
    let y = tau.im;
    // |σ| e^{−πσ²y} decreases beyond the peak |σ| = 1/√(2πy)
    let peak = 1.0 / (2.0 * PI * y).sqrt();
    outward(
        s,
        0.0,
        |sigma| {
            let e = 0.5 * sigma * sigma;
            cis_turns(e * tau.re + sigma * t) * (sigma * (-2.0 * PI * y * e).exp())
        },
        |sigma, mag| sigma.abs() > peak && mag < tol * 1e-3,
    )
}

/// `R_{s,t}(τ) = Σ_{σ∈ℤ+s} sgn(σ) β(2σ²τ₂) q^{−σ²/2} e^{−2πiσt}`.
pub fn r_unary(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<Complex64> {
    check_tau(tau)?;
    let (s, t) = (u.s.to_f64().unwrap_or(0.0), u.t.to_f64().unwrap_or(0.0));
    Ok(r_float(s, t, tau, tol))
}

fn r_float(s: f64, t: f64, tau: Complex64, tol: f64) -> Complex64 {
    let y = tau.im;
    outward(
        s,
        0.0,
        |sigma| {
            if sigma == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            // β(2σ²y)|q^{−σ²/2}| = erfcx(σ√(2πy)) e^{−πσ²y}
            let m = erfcx_real(sigma.abs() * (2.0 * PI * y).sqrt()) * (-PI * sigma * sigma * y).exp();
            cis_turns(-0.5 * sigma * sigma * tau.re - sigma * t) * (sgn(sigma) * m)
        },
        |sigma, mag| sigma != 0.0 && mag < tol * 1e-3,
    )
}

/// `Σ_{σ∈ℤ+s} |σ| e^{−πσ² h}`, the modulus bound for `g_{s,·}` at height `h`.
pub(crate) fn g_envelope(s: f64, h: f64, tol: f64) -> f64 {
    let peak = 1.0 / (2.0 * PI * h).sqrt();
    outward(
        s,
        0.0,
        |sigma| Complex64::new(sigma.abs() * (-PI * sigma * sigma * h).exp(), 0.0),
        |sigma, mag| sigma.abs() > peak && mag < tol * 1e-3,
    )
    .re
}

/// Smallest nonzero `|σ|` over `σ ∈ ℤ + s`.
pub(crate) fn min_abs_nonzero(s: f64) -> f64 {
    let f = s - s.floor();
    if f == 0.0 { 1.0 } else { f.min(1.0 - f) }
}

/// `R_{s,t}(τ) = −i ∫_{−τ̄}^{i∞} g_{s,−t}(z) / √(−i(z+τ)) dz` along
/// `z = −τ̄ + it`, where the radicand is `2τ₂ + t`.
pub fn r_via_integral(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<Estimate> {
    check_tau(tau)?;
    let (s, t) = (u.s.to_f64().unwrap_or(0.0), u.t.to_f64().unwrap_or(0.0));
    let y = tau.im;
    let inner = tol * 1e-3;
    let scale = g_envelope(s, y, inner) / (2.0 * y).sqrt();
    let rate = PI * min_abs_nonzero(s).powi(2);
    let integral: Integral = integrate_decaying(
        |h| {
            let z = Complex64::new(-tau.re, y + h);
            g_float(s, -t, z, inner) / sqrt_branch(Complex64::new(2.0 * y + h, 0.0))
        },
        0.0,
        TailBound::Exponential { rate, scale },
        tol,
        &QuadratureRule::default(),
    )?;
    Ok(Estimate { value: integral.value, error: integral.error })
}

/// `∫_0^{i∞} φ(z) / √(−i(z+τ)) dz` along `z = i t`, for an integrand
/// bounded near `t = 0` by `near(t)` and beyond by `scale·e^{−rate·t}`.
///
/// The segment `[0, t₀]` on which `t₀·near(t₀)` stays below `tol/100` is
/// dropped; `near` must be increasing on it.
pub fn cusp_integral<F, N>(
    phi: F,
    near: N,
    rate: f64,
    scale: f64,
    tau: Complex64,
    tol: f64,
) -> Result<Estimate>
where
    F: Fn(Complex64) -> Complex64,
    N: Fn(f64) -> f64,
{
    cusp_integral_from(phi, near, rate, scale, Complex64::new(0.0, 0.0), tau, tol)
}

/// As [`cusp_integral`] along `z = z₀ + i t`.
pub fn cusp_integral_from<F, N>(
    phi: F,
    near: N,
    rate: f64,
    scale: f64,
    z0: Complex64,
    tau: Complex64,
    tol: f64,
) -> Result<Estimate>
where
    F: Fn(Complex64) -> Complex64,
    N: Fn(f64) -> f64,
{
    check_tau(tau)?;
    let mut t0 = 1.0;
    while t0 > 1e-6 && t0 * near(t0) > tol / 100.0 {
        t0 *= 0.5;
    }
    if t0 * near(t0) > tol / 100.0 {
        return Err(Error::NonConvergence("integrand does not vanish at the cusp".into()));
    }
    let dropped = t0 * near(t0);
    let i = Complex64::new(0.0, 1.0);
    let integral = integrate_decaying(
        |t| {
            let z = z0 + i * t;
            phi(z) * i / sqrt_branch(-i * (z + tau))
        },
        t0,
        TailBound::Exponential { rate, scale },
        tol,
        &QuadratureRule::default(),
    )?;
    Ok(Estimate { value: integral.value, error: integral.error + dropped })
}

/// Bound on `|g_{s,t}(κ·it)|` for small `t` from the S-law:
/// `(κt)^{−3/2} Σ_{σ∈ℤ+t} |σ| e^{−πσ²/(κt)}`.
pub fn g_near_cusp_bound(t_char: f64, kappa: f64, t: f64) -> f64 {
    let h = 1.0 / (kappa * t);
    h.powf(1.5) * g_envelope(t_char, h, 1e-30)
}

/// Generator of `⟨c⟩^⊥ = {x ∈ ℤ² : B(c,x) = 0}` and the projection
/// `x ↦ x − B(c,x)/(2Q(c))·c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerpData {
    pub c: [i64; 2],
    pub generator: [i64; 2],
    /// `A c`, so that `B(c,x) = w·x`.
    pub w: [i64; 2],
    /// `2Q(c)`.
    pub two_q: i64,
}

impl PerpData {
    pub fn ratio(&self, x: &Vec2) -> Rat {
        (Rat::from_integer(self.w[0]) * x[0] + Rat::from_integer(self.w[1]) * x[1]) / Rat::from_integer(self.two_q)
    }

    pub fn project(&self, x: &Vec2) -> Vec2 {
        let r = self.ratio(x);
        [x[0] - r * self.c[0], x[1] - r * self.c[1]]
    }

    /// Whether `x − y ∈ ⟨c⟩^⊥_ℤ`.
    pub fn equivalent(&self, x: &Vec2, y: &Vec2) -> bool {
        let d = [x[0] - y[0], x[1] - y[1]];
        if !d[0].is_integer() || !d[1].is_integer() {
            return false;
        }
        self.ratio(&d).is_zero()
    }
}

pub fn perp_data(l: &IndefLattice, c: [i64; 2]) -> Result<PerpData> {
    let cv = ri(c);
    let q = quad(l, &cv);
    if !q.is_negative() {
        return Err(invalid!("Q(c) = {q} is not negative"));
    }
    let wv = l.apply(&cv);
    let w = [wv[0].to_integer(), wv[1].to_integer()];
    let d = w[0].gcd(&w[1]);
    let mut g = [w[1] / d, -w[0] / d];
    if g[0] < 0 || (g[0] == 0 && g[1] < 0) {
        g = [-g[0], -g[1]];
    }
    Ok(PerpData { c, generator: g, w, two_q: (q * 2).to_integer() })
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 { (-a, -1, 0) } else { (a, 1, 0) }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Representatives of `{ν ∈ ℤ² + a : B(c,ν)/2Q(c) ∈ [0,1)}` modulo
/// `⟨c⟩^⊥_ℤ`, sorted by the ratio. Each is the shortest in its class.
pub fn enumerate_p(l: &IndefLattice, c: [i64; 2], a: &Vec2) -> Result<Vec<(Vec2, Rat)>> {
    let pd = perp_data(l, c)?;
    let (d, x0, y0) = ext_gcd(pd.w[0], pd.w[1]);
    let wa = Rat::from_integer(pd.w[0]) * a[0] + Rat::from_integer(pd.w[1]) * a[1];
    let kappa = Rat::from_integer(pd.two_q);
    // w·n ∈ (κ − w·a, −w·a]
    let lo = kappa - wa;
    let hi = -wa;
    let dr = Rat::from_integer(d);
    let kmin = (lo / dr).floor().to_integer() + 1;
    let kmax = (hi / dr).floor().to_integer();
    let g = ri(pd.generator);
    let mut out = Vec::new();
    for k in kmin..=kmax {
        let n = ri([x0 * k, y0 * k]);
        let mut nu = [n[0] + a[0], n[1] + a[1]];
        // shortest representative along the generator
        let norm2 = |v: &Vec2| v[0] * v[0] + v[1] * v[1];
        let gg = norm2(&g);
        let shift = -((nu[0] * g[0] + nu[1] * g[1]) / gg).round();
        nu = [nu[0] + shift * g[0], nu[1] + shift * g[1]];
        out.push((nu, pd.ratio(&nu)));
    }
    out.sort_by_key(|x| x.1);
    Ok(out)
}

/// `θ^{⊥c}_{μ,b}(τ) = Σ_{ξ ∈ ⟨c⟩^⊥ + μ^{⊥c}} q^{Q(ξ)} e^{2πiB(ξ, b^{⊥c})}`.
pub fn theta_perp(l: &IndefLattice, c: [i64; 2], mu: &Vec2, b: &Vec2, tau: Complex64, tol: f64) -> Result<Complex64> {
    check_tau(tau)?;
    let pd = perp_data(l, c)?;
    let g = ri(pd.generator);
    let mp = pd.project(mu);
    let bp = pd.project(b);
    // Q(k g + μ⊥) = Q(g)k² + B(g,μ⊥)k + Q(μ⊥)
    let qa = quad(l, &g).to_f64().unwrap_or(0.0);
    let qb = bilinear(l, &g, &mp).to_f64().unwrap_or(0.0);
    let qc = quad(l, &mp).to_f64().unwrap_or(0.0);
    let pa = bilinear(l, &g, &bp).to_f64().unwrap_or(0.0);
    let pb = bilinear(l, &mp, &bp).to_f64().unwrap_or(0.0);
    let vertex = -qb / (2.0 * qa);
    Ok(outward(
        0.0,
        vertex,
        |k| {
            let e = qa * k * k + qb * k + qc;
            cis_turns(e * tau.re + pa * k + pb) * (-2.0 * PI * tau.im * e).exp()
        },
        |_, mag| mag < tol * 1e-3,
    ))
}

/// `Σ_{μ∈P(c₁)} θ^{⊥c₁}_{μ,b}(τ) R_{B(c₁,μ)/2Q(c₁), −B(c₁,b)}(−2Q(c₁)τ)`
/// minus the same with `c₂`.
pub fn remainder_term(l: &IndefLattice, ch: &ThetaChar, tau: Complex64, tol: f64) -> Result<Complex64> {
    check_tau(tau)?;
    let mut total = Complex64::new(0.0, 0.0);
    for (which, sign) in [(1, 1.0), (2, -1.0)] {
        let c = l.c(which);
        let pd = perp_data(l, c)?;
        let cb = bilinear(l, &ri(c), &ch.b);
        let scaled = tau * (-(pd.two_q as f64));
        for (mu, ratio) in enumerate_p(l, c, &ch.a)? {
            let th = theta_perp(l, c, &mu, &ch.b, tau, tol)?;
            let r = r_unary(&UnaryChar::new(ratio, -cb), scaled, tol)?;
            total += th * r * sign;
        }
    }
    Ok(total)
}

/// Which scaling of the Gram matrix a dual quotient refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualScale {
    /// `A⁻¹ℤ²/ℤ²`.
    Full,
    /// `(A/2)⁻¹ℤ²/ℤ²`.
    Half,
}

/// Representatives of the dual quotient for the tenth-order lattice:
/// `(v/10)e + (k/2)e_x` (20 elements) or `(v/5)e` (5 elements).
pub fn dual_quotient(scale: DualScale) -> Vec<Vec2> {
    match scale {
        DualScale::Full => (0..10)
            .flat_map(|v| (0..2).map(move |k| [Rat::new(v, 10) + Rat::new(k, 2), Rat::new(v, 10)]))
            .collect(),
        DualScale::Half => (0..5).map(|v| rv(v, 5)).collect(),
    }
}

fn add(x: &Vec2, y: &Vec2) -> Vec2 {
    [x[0] + y[0], x[1] + y[1]]
}

fn neg(x: &Vec2) -> Vec2 {
    [-x[0], -x[1]]
}

/// Both sides of `ϑ_{a,b}(−1/τ) = (i/√(−det A))(−iτ) e^{2πiB(a,b)} Σ_p ϑ_{b+p,−a}(τ)`
/// for the tenth-order lattice.
pub fn vartheta_s_sides(ch: &ThetaChar, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let l = IndefLattice::TENTH;
    let lhs = vartheta(&l, ch, -tau.inv(), tol)?.value;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in dual_quotient(DualScale::Full) {
        let c = ThetaChar { a: add(&ch.b, &p), b: neg(&ch.a) };
        sum += vartheta(&l, &c, tau, tol)?.value;
    }
    let pre = Complex64::new(0.0, 1.0) / ((-l.det()) as f64).sqrt()
        * pow_neg_i_tau(tau, 1)?.powi(2)
        * cis_turns(bilinear(&l, &ch.a, &ch.b).to_f64().unwrap_or(0.0));
    Ok((lhs, pre * sum))
}

/// Both sides of `ϑ_{a,b}(τ+1) = e^{−2πiQ(a)−πi aᵀdiag A} ϑ_{a, b+a+½A⁻¹diag A}(τ)`.
pub fn vartheta_t_sides(l: &IndefLattice, ch: &ThetaChar, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let lhs = vartheta(l, ch, tau + 1.0, tol)?.value;
    let diag = ri([l.a[0][0], l.a[1][1]]);
    let half = Rat::new(1, 2);
    let shift = l.solve(&diag);
    let b2 = [ch.b[0] + ch.a[0] + half * shift[0], ch.b[1] + ch.a[1] + half * shift[1]];
    let phase = -quad(l, &ch.a) - half * (ch.a[0] * diag[0] + ch.a[1] * diag[1]);
    let rhs = cis_turns(phase.to_f64().unwrap_or(0.0)) * vartheta(l, &ThetaChar { a: ch.a, b: b2 }, tau, tol)?.value;
    Ok((lhs, rhs))
}

/// Both sides of the sine form of the S-law for `a = (u/10)e + (j/2)e_x`, `b = 0`:
/// `(−iτ)(1/√5) Σ_{v=1}^{4} Σ_k (−1)^{jv+ku} sin(2πuv/5) ϑ_{(v/10)e+(k/2)e_x,0}(τ)`.
pub fn vartheta_sine_sides(u: i64, j: i64, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let l = IndefLattice::TENTH;
    let lhs = vartheta(&l, &ThetaChar::tenth(u, j, 0), -tau.inv(), tol)?.value;
    let mut sum = Complex64::new(0.0, 0.0);
    for v in 1..=4 {
        for k in 0..2 {
            let sign = if (j * v + k * u) % 2 == 0 { 1.0 } else { -1.0 };
            let w = sign * (2.0 * PI * (u * v) as f64 / 5.0).sin();
            sum += vartheta(&l, &ThetaChar::tenth(v, k, 0), tau, tol)?.value * w;
        }
    }
    Ok((lhs, pow_neg_i_tau(tau, 1)?.powi(2) * sum / 5f64.sqrt()))
}

/// `∫_0^{i∞} g_{s,t}(z) / √(−i(z+τ)) dz` along the imaginary axis.
pub fn g_cusp_period(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<Estimate> {
    check_tau(tau)?;
    let (s, t) = (u.s.to_f64().unwrap_or(0.0), u.t.to_f64().unwrap_or(0.0));
    let inner = tol * 1e-3;
    let floor = tau.im.sqrt();
    let rate = PI * min_abs_nonzero(s).powi(2);
    let scale = g_envelope(s, 1.0, 1e-30) * rate.exp() / floor;
    cusp_integral(
        |z| g_float(s, t, z, inner),
        |h| g_near_cusp_bound(t, 1.0, h) / floor,
        rate,
        scale,
        tau,
        tol,
    )
}

fn turns(x: Rat) -> Complex64 {
    cis_turns(x.to_f64().unwrap_or(0.0))
}

/// Both sides of `g_{s,t}(−1/τ) = i e^{2πist} (−iτ)^{3/2} g_{t,−s}(τ)`.
pub fn g_s_sides(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let lhs = g_unary(u, -tau.inv(), tol)?;
    let g = g_unary(&UnaryChar::new(u.t, -u.s), tau, tol)?;
    let rhs = Complex64::new(0.0, 1.0) * turns(u.s * u.t) * pow_neg_i_tau(tau, 3)? * g;
    Ok((lhs, rhs))
}

/// Both sides of `g_{s,t}(τ+1) = e^{−πis(s+1)} g_{s,t+s+½}(τ)`.
pub fn g_t_sides(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let lhs = g_unary(u, tau + 1.0, tol)?;
    let shifted = UnaryChar::new(u.s, u.t + u.s + Rat::new(1, 2));
    let rhs = turns(-u.s * (u.s + 1) / 2) * g_unary(&shifted, tau, tol)?;
    Ok((lhs, rhs))
}

/// Both sides of `R_{s,t}(τ+1) = e^{πis(s+1)} R_{s,t+s+½}(τ)`.
pub fn r_t_sides(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let lhs = r_unary(u, tau + 1.0, tol)?;
    let shifted = UnaryChar::new(u.s, u.t + u.s + Rat::new(1, 2));
    let rhs = turns(u.s * (u.s + 1) / 2) * r_unary(&shifted, tau, tol)?;
    Ok((lhs, rhs))
}

/// Both sides of the S-behaviour of `R`:
/// `R_{s,t}(−1/τ) = −i e^{−2πist} √(−iτ) (R_{−t,s}(τ) + i ∫_0^{i∞} g_{−t,−s}(z)/√(−i(z+τ)) dz)`.
pub fn r_s_sides(u: &UnaryChar, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let i = Complex64::new(0.0, 1.0);
    let lhs = r_unary(u, -tau.inv(), tol)?;
    let r = r_unary(&UnaryChar::new(-u.t, u.s), tau, tol)?;
    let period = g_cusp_period(&UnaryChar::new(-u.t, -u.s), tau, tol)?.value;
    let rhs = -i * turns(-u.s * u.t) * pow_neg_i_tau(tau, 1)? * (r + i * period);
    Ok((lhs, rhs))
}

/// Both sides of `g_{0,u/20}(τ/20) = 40i Σ_{v=1}^{9} sin(πuv/10) g_{v/20,0}(20τ)`.
pub fn rescaling_sides(u: i64, tau: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
    let lhs = g_unary(&UnaryChar::new(Rat::from_integer(0), Rat::new(u, 20)), tau / 20.0, tol)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for v in 1..=9 {
        let g = g_unary(&UnaryChar::new(Rat::new(v, 20), Rat::from_integer(0)), tau * 20.0, tol)?;
        sum += g * (PI * (u * v) as f64 / 10.0).sin();
    }
    Ok((lhs, Complex64::new(0.0, 40.0) * sum))
}
