//! Two auxiliary identities behind the Mordell representation of the
//! correction term: a partial-fraction expansion of `e^{2πbz}/cosh πz` and a
//! Gaussian integral against a simple pole.

use alloc::format;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::special::{integrate_decaying, sqrt_branch, QuadratureRule, TailBound};

/// Both sides of an identity plus the truncation estimate for the right side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LemmaSides {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub tail: f64,
}

impl LemmaSides {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

/// `e^{2πbz}/cosh πz` against `−(1/π) Σ_{r∈ℤ+½} e^{2πir(b+½)}/(z − ir)`.
///
/// The `±r` terms are paired and the `1/r` part of each pair is summed in
/// closed form (`Σ_{r>0} sin(2πrc)/r = π/2` for `0 < c < 1`), leaving an
/// `O(1/r²)` remainder summed up to `r ≤ terms`.
pub fn partial_fractions(b: f64, z: Complex64, terms: u32) -> Result<LemmaSides> {
    if !(b > -0.5 && b < 0.5) {
        return Err(invalid!("b = {b} lies outside (-1/2, 1/2)"));
    }
    if terms == 0 {
        return Err(invalid!("at least one term is required"));
    }
    // nearest pole i r with r ∈ ℤ + ½
    let r0 = (z.im - 0.5).round() + 0.5;
    let gap = (z - Complex64::new(0.0, r0)).norm();
    if gap < 1e-6 {
        return Err(Error::NearSingular(format!("z = {z} is {gap:e} from the pole {r0}i")));
    }
    let lhs = (z * (2.0 * PI * b)).exp() / (z * PI).cosh();
    let c = b + 0.5;
    let z2 = z * z;
    let mut sum = Complex64::new(-PI, 0.0);
    for k in 0..terms {
        let r = k as f64 + 0.5;
        let theta = 2.0 * PI * r * c;
        sum += (z * (2.0 * theta.cos()) + z2 * (2.0 * theta.sin() / r)) / (z2 + r * r);
    }
    let n = terms as f64;
    let tail = 2.0 * z.norm() * (1.0 + z.norm()) / (PI * n * n * (PI * c).sin().abs().max(1e-300));
    Ok(LemmaSides { lhs, rhs: -sum / PI, tail })
}

/// `∫_{−∞}^{∞} e^{πiτw²}/(w + ir) dw` against
/// `−πr ∫_0^{i∞} e^{πir²z}/√(−i(z+τ)) dz`.
///
/// The left side is folded onto `w ≥ 0` as `∫_0^∞ e^{πiτw²}(−2ir)/(w² + r²) dw`;
/// the right side runs along `z = it`, where the radicand is `t − iτ`.
pub fn gaussian_pole_integral(r: f64, tau: Complex64, tol: f64) -> Result<LemmaSides> {
    if r == 0.0 || !r.is_finite() {
        return Err(invalid!("r must be a nonzero real"));
    }
    if !(tau.im > 0.0) {
        return Err(invalid!("tau must lie in the upper half-plane, got {tau}"));
    }
    let rule = QuadratureRule::default();
    let i = Complex64::new(0.0, 1.0);
    let y = tau.im;
    let left = integrate_decaying(
        |w| (i * tau * (PI * w * w)).exp() * (-2.0 * r) * i / (w * w + r * r),
        0.0,
        TailBound::Gaussian { rate: PI * y, scale: 2.0 / r.abs() },
        tol,
        &rule,
    )?;
    let right = integrate_decaying(
        |t| (-PI * r * r * t).exp() / sqrt_branch(Complex64::new(t, 0.0) - i * tau),
        0.0,
        TailBound::Exponential { rate: PI * r * r, scale: 1.0 / y.sqrt() },
        tol / (PI * r.abs()),
        &rule,
    )?;
    Ok(LemmaSides {
        lhs: left.value,
        rhs: -i * (PI * r) * right.value,
        tail: left.error + PI * r.abs() * right.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_fraction_points() {
        for (b, z) in [(0.0, Complex64::new(0.3, 0.0)), (0.2, Complex64::new(0.7, 0.2))] {
            let s = partial_fractions(b, z, 4000).unwrap();
            assert!(s.residual() < 1e-6, "b = {b}: {:e}", s.residual());
        }
        let near = Complex64::new(0.0, 0.5 + 1e-8);
        assert!(matches!(partial_fractions(0.0, near, 10), Err(Error::NearSingular(_))));
    }

    #[test]
    fn unpaired_partial_sum_agrees() {
        // direct symmetric partial sum, converging like 1/N
        let (b, z) = (0.2, Complex64::new(0.7, 0.2));
        let c = b + 0.5;
        let mut direct = Complex64::new(0.0, 0.0);
        for k in -200_000i64..200_000 {
            let r = k as f64 + 0.5;
            direct += Complex64::new(0.0, 2.0 * PI * r * c).exp() / (z - Complex64::new(0.0, r));
        }
        let s = partial_fractions(b, z, 4000).unwrap();
        assert!((-direct / PI - s.rhs).norm() < 1e-4);
    }

    #[test]
    fn gaussian_pole_points() {
        let i = Complex64::new(0.0, 1.0);
        for r in [0.5, -0.5, 6.0] {
            let s = gaussian_pole_integral(r, i, 1e-12).unwrap();
            assert!(s.residual() < 1e-10, "r = {r}: {:e}", s.residual());
        }
        assert!(gaussian_pole_integral(0.0, i, 1e-12).is_err());
    }
}
