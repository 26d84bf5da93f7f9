//! Numeric kernels shared by the evaluation modules: error functions,
//! branch-fixed complex powers, roots of unity, Jacobi theta constants and
//! a semi-infinite Gauss–Legendre panel integrator.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_SQRT_PI, PI};

use num_complex::Complex64;
use num_rational::Ratio;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;

use crate::error::{invalid, Error, Result};

pub type Rat = Ratio<i64>;

const SQRT_PI: f64 = 1.772_453_850_905_516;
/// Switch point between the power series and the continued fraction.
const ERF_SPLIT: f64 = 1.5;

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/sqrt(pi) x e^{-x^2} sum (2x^2)^n / (2n+1)!!, all terms positive
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    FRAC_2_SQRT_PI * x * (-x2).exp() * sum
}

/// Scaled complementary error function `e^{x^2} erfc(x)` for `x >= ERF_SPLIT`
/// by modified Lentz evaluation of the Laplace continued fraction.
fn erfcx_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..2000 {
        let a = n as f64 * 0.5;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / (SQRT_PI * f)
}

/// The error function.
pub fn erf_real(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let v = if ax < ERF_SPLIT {
        erf_series(ax)
    } else {
        1.0 - erfc_positive(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn erfc_positive(x: f64) -> f64 {
    if x < ERF_SPLIT {
        1.0 - erf_series(x)
    } else if x > 27.3 {
        0.0
    } else {
        erfcx_cf(x) * (-x * x).exp()
    }
}

/// The complementary error function, relative accuracy ~1e-15 for x >= 0.
pub fn erfc_real(x: f64) -> f64 {
    if x >= 0.0 {
        erfc_positive(x)
    } else {
        2.0 - erfc_positive(-x)
    }
}

/// Scaled complementary error function `e^{x^2} erfc(x)` for `x >= 0`.
///
/// Never underflows, so it is used wherever an `erfc` tail multiplies a
/// growing exponential.
pub fn erfcx_real(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < ERF_SPLIT {
        (x * x).exp() * (1.0 - erf_series(x))
    } else {
        erfcx_cf(x)
    }
}

/// `E(w) = 2 ∫_0^w e^{-πu²} du = erf(√π w)` on the real line.
pub fn e_fn(w: f64) -> f64 {
    erf_real(SQRT_PI * w)
}

/// `β(v) = ∫_v^∞ e^{-πu} u^{-1/2} du = erfc(√(πv))` for `v >= 0`.
pub fn beta_fn(v: f64) -> Result<f64> {
    if !(v >= 0.0) {
        return Err(invalid!("beta_fn requires v >= 0, got {v}"));
    }
    Ok(erfc_positive((PI * v).sqrt()))
}

/// `β(v) e^{πv}`, finite for every `v >= 0`.
pub fn beta_scaled(v: f64) -> f64 {
    erfcx_real((PI * v).sqrt())
}

/// Sign with `sgn(0) = 0`.
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `e^{2πiθ}` for a real angle measured in turns.
pub fn cis_turns(theta: f64) -> Complex64 {
    let t = theta - theta.floor();
    let a = 2.0 * PI * t;
    Complex64::new(a.cos(), a.sin())
}

/// `ζ_n^k = e^{2πik/n}`, reduced exactly before the trigonometric call.
pub fn zeta(k: i64, n: i64) -> Complex64 {
    assert!(n > 0, "root of unity order must be positive");
    let r = k.rem_euclid(n);
    cis_turns(r as f64 / n as f64)
}

fn check_upper(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(invalid!("tau must lie in the upper half-plane, got {tau}"));
    }
    Ok(())
}

/// `q^α = exp(2πiατ)`; fractional powers of `q` are always formed this way.
pub fn q_pow(tau: Complex64, alpha: Rat) -> Result<Complex64> {
    check_upper(tau)?;
    Ok(q_pow_f64(tau, alpha.to_f64().unwrap_or(0.0)))
}

/// Unchecked `exp(2πiατ)` for real `α`.
#[inline]
pub fn q_pow_f64(tau: Complex64, alpha: f64) -> Complex64 {
    let modulus = (-2.0 * PI * alpha * tau.im).exp();
    let turn = alpha * tau.re;
    cis_turns(turn) * modulus
}

/// Principal square root, branch cut along the negative real axis.
pub fn sqrt_branch(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = z.norm();
    let re = ((r + z.re.abs()) * 0.5).sqrt();
    if z.re >= 0.0 {
        Complex64::new(re, z.im / (2.0 * re))
    } else {
        let im = if z.im < 0.0 { -re } else { re };
        Complex64::new(z.im.abs() / (2.0 * re), im)
    }
}

/// `(-iτ)^{k/2}` for odd `k`, built from the principal square root.
pub fn pow_neg_i_tau(tau: Complex64, half_exponent: i32) -> Result<Complex64> {
    check_upper(tau)?;
    if half_exponent % 2 == 0 {
        return Err(invalid!("exponent {half_exponent}/2 is not a half-odd integer"));
    }
    let s = sqrt_branch(Complex64::new(tau.im, -tau.re));
    let p = s.powi(half_exponent.abs());
    Ok(if half_exponent < 0 { p.inv() } else { p })
}

/// `θ_2(τ) = Σ q^{(n+1/2)²/2}` by direct summation.
pub fn theta2(tau: Complex64) -> Result<Complex64> {
    check_upper(tau)?;
    Ok(theta_sum(tau, 0.5, false))
}

/// `θ_3(τ) = Σ q^{n²/2}`.
pub fn theta3(tau: Complex64) -> Result<Complex64> {
    check_upper(tau)?;
    Ok(theta_sum(tau, 0.0, false))
}

/// `θ_4(τ) = Σ (-1)^n q^{n²/2}`.
pub fn theta4(tau: Complex64) -> Result<Complex64> {
    check_upper(tau)?;
    Ok(theta_sum(tau, 0.0, true))
}

fn theta_sum(tau: Complex64, offset: f64, alternating: bool) -> Complex64 {
    // pair n with -n (integer lattice) or with -n-1 (half-integer lattice)
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n: i64 = 0;
    loop {
        let partner = if offset == 0.0 { -n } else { -n - 1 };
        let x = n as f64 + offset;
        let e = 0.5 * x * x;
        let sign = if alternating && n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        let term = q_pow_f64(tau, e) * sign;
        sum += if partner == n { term } else { term * 2.0 };
        if (-2.0 * PI * e * tau.im).exp() < 1e-18 {
            break;
        }
        n += 1;
    }
    sum
}

/// Gauss–Legendre panel rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// Refinement cap: total panels allowed per integral.
    pub max_panels: usize,
    /// Panels in the initial uniform split of the finite range.
    pub initial_panels: usize,
}

impl QuadratureRule {
    /// `n`-point Gauss–Legendre nodes by Newton iteration on `P_n`.
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n >= 2, "need at least two nodes");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        QuadratureRule { nodes, weights, max_panels: 20_000, initial_panels: 8 }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn panel<F: Fn(f64) -> Complex64>(&self, f: &F, a: f64, b: f64) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += f(mid + half * x) * *w;
        }
        s * half
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::gauss_legendre(20)
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Certified bound on `∫_T^∞ |f|` used to place the upper cutoff.
pub enum TailBound<'a> {
    /// `|f(t)| <= scale · e^{-rate t}`.
    Exponential { rate: f64, scale: f64 },
    /// `|f(t)| <= scale · e^{-rate t²}`.
    Gaussian { rate: f64, scale: f64 },
    /// Caller-supplied, non-increasing in `T`.
    Custom(&'a dyn Fn(f64) -> f64),
}

impl TailBound<'_> {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            TailBound::Exponential { rate, scale } => scale * (-rate * t).exp() / rate,
            TailBound::Gaussian { rate, scale } => {
                scale * 0.5 * (PI / rate).sqrt() * erfc_real(rate.sqrt() * t.max(0.0))
            }
            TailBound::Custom(f) => f(t),
        }
    }
}

/// Result of a quadrature: value, error estimate and the cutoff used.
#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub upper: f64,
    pub panels: usize,
}

/// `∫_start^∞ f(t) dt` for a smooth integrand with a known decay envelope.
///
/// The range is cut at the first doubling `T` where the certified tail is
/// below `tol/10`; `[start, T]` is then bisected adaptively, each panel
/// compared against its two halves. The reported error is the sum of those
/// panel differences plus the tail bound.
pub fn integrate_decaying<F>(
    f: F,
    start: f64,
    tail: TailBound<'_>,
    tol: f64,
    rule: &QuadratureRule,
) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    if !(tol > 0.0) {
        return Err(invalid!("tolerance must be positive"));
    }
    let mut upper = start + 1.0;
    let mut tail_err = tail.at(upper);
    let mut doublings = 0;
    while !(tail_err <= tol / 10.0) {
        upper = start + 2.0 * (upper - start);
        tail_err = tail.at(upper);
        doublings += 1;
        if doublings > 40 || !upper.is_finite() {
            return Err(Error::NonConvergence(format!(
                "tail bound never fell below {:e}",
                tol / 10.0
            )));
        }
    }
    let span = upper - start;
    let budget = 0.5 * tol;
    let mut stack: Vec<(f64, f64, Complex64)> = Vec::new();
    let n0 = rule.initial_panels.max(1);
    for i in 0..n0 {
        let a = start + span * i as f64 / n0 as f64;
        let b = start + span * (i + 1) as f64 / n0 as f64;
        stack.push((a, b, rule.panel(&f, a, b)));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut panels = n0;
    while let Some((a, b, whole)) = stack.pop() {
        let m = 0.5 * (a + b);
        let left = rule.panel(&f, a, m);
        let right = rule.panel(&f, m, b);
        let halves = left + right;
        let diff = (halves - whole).norm();
        let local = budget * (b - a) / span;
        if diff <= local || (b - a) < 1e-12 * span.max(1.0) {
            total += halves;
            err += diff;
            continue;
        }
        panels += 2;
        if panels > rule.max_panels {
            return Err(Error::NonConvergence(format!(
                "panel refinement exceeded {} panels",
                rule.max_panels
            )));
        }
        stack.push((a, m, left));
        stack.push((m, b, right));
    }
    if !total.re.is_finite() || !total.im.is_finite() {
        return Err(Error::NonConvergence("non-finite quadrature value".into()));
    }
    Ok(Integral { value: total, error: err + tail_err, upper, panels })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    // reference values from a 50-digit evaluation
    const ERF_TABLE: [(f64, f64); 6] = [
        (0.1, 0.1124629160182848984),
        (0.5, 0.5204998778130465377),
        (1.0, 0.8427007929497148693),
        (1.5, 0.9661051464753107271),
        (2.0, 0.9953222650189527342),
        (3.5, 0.9999992569016276586),
    ];
    const ERFC_TABLE: [(f64, f64); 5] = [
        (1.0, 0.1572992070502851307),
        (2.0, 4.677734981047265838e-3),
        (3.0, 2.209049699858544137e-5),
        (5.0, 1.537459794428034850e-12),
        (6.0, 2.151973671249891311e-17),
    ];

    #[test]
    fn erf_reference_values() {
        assert_eq!(erf_real(0.0), 0.0);
        assert_eq!(erfc_real(0.0), 1.0);
        for (x, v) in ERF_TABLE {
            assert!(close(erf_real(x), v, 1e-14), "erf({x})");
            assert!(close(erf_real(-x), -v, 1e-14));
        }
        for (x, v) in ERFC_TABLE {
            assert!(close(erfc_real(x), v, 2e-14), "erfc({x}) = {}", erfc_real(x));
        }
    }

    #[test]
    fn e_and_beta_are_consistent() {
        for i in 0..100 {
            let w = -4.0 + 8.0 * i as f64 / 99.0;
            let lhs = sgn(w) * (1.0 - beta_fn(w * w).unwrap());
            assert!((lhs - e_fn(w)).abs() < 1e-13, "w = {w}");
        }
        assert_eq!(e_fn(0.0), 0.0);
        assert_eq!(e_fn(10.0), 1.0);
        assert_eq!(beta_fn(0.0).unwrap(), 1.0);
        assert!(beta_fn(-1.0).is_err());
    }

    #[test]
    fn beta_asymptotics() {
        // β(v) e^{πv} √v → 1/π
        let v = 50.0;
        let r = beta_scaled(v) * v.sqrt();
        assert!((r * PI - 1.0).abs() < 0.02);
    }

    #[test]
    fn sqrt_branch_basics() {
        assert_eq!(sqrt_branch(Complex64::new(1.0, 0.0)), Complex64::new(1.0, 0.0));
        let tau = Complex64::new(0.0, 1.0);
        assert!((pow_neg_i_tau(tau, 1).unwrap() - 1.0).norm() < 1e-15);
        let z = Complex64::new(-4.0, 1e-300);
        assert!((sqrt_branch(z) - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        let tau = Complex64::new(-0.4, 0.3);
        let s = pow_neg_i_tau(tau, 1).unwrap();
        assert!((pow_neg_i_tau(tau, 3).unwrap() - s * s * s).norm() < 1e-14);
        assert!((pow_neg_i_tau(tau, -3).unwrap() * s * s * s - 1.0).norm() < 1e-14);
        assert!(pow_neg_i_tau(tau, 2).is_err());
    }

    #[test]
    fn q_pow_conventions() {
        let i = Complex64::new(0.0, 1.0);
        let v = q_pow(i, Rat::from_integer(1)).unwrap();
        assert!((v.re - (-2.0 * PI).exp()).abs() < 1e-18 && v.im.abs() < 1e-18);
        assert_eq!(q_pow(i, Rat::from_integer(0)).unwrap(), Complex64::new(1.0, 0.0));
        assert!(q_pow(Complex64::new(0.0, -1.0), Rat::from_integer(1)).is_err());
        let tau = Complex64::new(0.37, 0.61);
        let h = q_pow(tau, Rat::new(1, 2)).unwrap();
        assert!((h * h - q_pow(tau, Rat::from_integer(1)).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn theta_at_i() {
        // θ_3(i) = π^{1/4} / Γ(3/4)
        let t3 = theta3(Complex64::new(0.0, 1.0)).unwrap();
        assert!((t3.re - 1.086_434_811_213_308).abs() < 1e-14);
        // direct 60-term oracle
        let mut s = 0.0;
        for n in -60i64..=60 {
            s += (-PI * (n * n) as f64).exp();
        }
        assert!((t3.re - s).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_weights() {
        let r = QuadratureRule::gauss_legendre(20);
        let total: f64 = r.weights().iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        assert!(r.weights().iter().all(|w| *w > 0.0));
        assert!(r.nodes().iter().all(|x| x.abs() < 1.0));
        // exact for x^38
        let s: f64 = r.nodes().iter().zip(r.weights()).map(|(x, w)| w * x.powi(38)).sum();
        assert!((s - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn integrate_reference_integrands() {
        let rule = QuadratureRule::default();
        let r = integrate_decaying(
            |t| Complex64::new((-t).exp(), 0.0),
            0.0,
            TailBound::Exponential { rate: 1.0, scale: 1.0 },
            1e-12,
            &rule,
        )
        .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let r = integrate_decaying(
            |t| Complex64::new((-PI * t * t).exp(), 0.0),
            0.0,
            TailBound::Gaussian { rate: PI, scale: 1.0 },
            1e-12,
            &rule,
        )
        .unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn integrate_matches_trapezoid_oracle() {
        let f = |t: f64| (-5.0 * t * t).exp() / (5.0 * t).cosh();
        // trapezoid with 10^6 points on [0, 10]
        let n = 1_000_000;
        let h = 10.0 / n as f64;
        let mut s = 0.5 * (f(0.0) + f(10.0));
        for k in 1..n {
            s += f(k as f64 * h);
        }
        let oracle = s * h;
        let r = integrate_decaying(
            |t| Complex64::new(f(t), 0.0),
            0.0,
            TailBound::Gaussian { rate: 5.0, scale: 1.0 },
            1e-10,
            &QuadratureRule::default(),
        )
        .unwrap();
        assert!((r.value.re - oracle).abs() < 1e-9);
        assert!(r.error < 1e-10);
    }

    #[test]
    fn integrate_reports_refinement_cap() {
        let mut rule = QuadratureRule::gauss_legendre(4);
        rule.max_panels = 10;
        let r = integrate_decaying(
            |t| Complex64::new((40.0 * t).sin() * (-t).exp(), 0.0),
            0.0,
            TailBound::Exponential { rate: 1.0, scale: 1.0 },
            1e-14,
            &rule,
        );
        assert!(matches!(r, Err(Error::NonConvergence(_))));
    }
}
