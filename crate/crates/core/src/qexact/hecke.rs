//! Hecke-type double sums `(Σ_{r,s≥0} − Σ_{r,s<0}) ± q^{αr²+βrs+γs²+λr+μs+c}`.

use alloc::format;

use num_traits::{One, Zero};

use super::{int, to_grid, FracPowerSeries, Rat};
use crate::error::{Error, Result};

/// Signed monomial summed over the two cones of a Hecke-type double sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeckeSpec {
    /// `(α, β, γ)` of `αr² + βrs + γs²`.
    pub quad: (i64, i64, i64),
    /// `(λ, μ)` of `λr + μs`.
    pub lin: (Rat, Rat),
    /// Constant exponent added to every term.
    pub shift: Rat,
    /// Include the character `(−1)^r`.
    pub sign_r: bool,
    /// Include the character `(−1)^s`.
    pub sign_s: bool,
}

impl HeckeSpec {
    /// Builds a spec, rejecting forms that do not grow on both cones.
    ///
    /// Growth on the cones is all the double sum needs; the indefinite
    /// forms of the tenth-order identities pass, but so does a degenerate
    /// form such as `r² + 2rs + s²` (see [`is_indefinite`](Self::is_indefinite)).
    pub fn new(quad: (i64, i64, i64), lin: (Rat, Rat), shift: Rat, alternating: bool) -> Result<Self> {
        let spec = HeckeSpec { quad, lin, shift, sign_r: alternating, sign_s: alternating };
        to_grid(lin.0)?;
        to_grid(lin.1)?;
        to_grid(shift)?;
        spec.cone_min()?;
        Ok(spec)
    }

    /// `β² − 4αγ > 0`.
    pub fn is_indefinite(&self) -> bool {
        let (a, b, c) = self.quad;
        b * b - 4 * a * c > 0
    }

    /// Minimum of the quadratic form over the boundary of the unit max-norm
    /// square inside the first quadrant. Both cones share this value.
    fn cone_min(&self) -> Result<Rat> {
        let (a, b, c) = self.quad;
        // along r = 1, s = t ∈ [0,1]: a + b t + c t²; same with a and c swapped
        let edge = |p: i64, q: i64, r: i64| -> Rat {
            let f = |t: Rat| Rat::from_integer(p) + Rat::from_integer(q) * t + Rat::from_integer(r) * t * t;
            let mut m = f(Rat::zero()).min(f(Rat::one()));
            if r > 0 {
                let t = Rat::new(-q, 2 * r);
                if t > Rat::zero() && t < Rat::one() {
                    m = m.min(f(t));
                }
            }
            m
        };
        let k = edge(a, b, c).min(edge(c, b, a));
        if k <= Rat::zero() {
            return Err(Error::NonDivergentForm(format!(
                "{a}r² + {b}rs + {c}s² does not grow on the cones r,s ≥ 0 and r,s < 0"
            )));
        }
        Ok(k)
    }

    /// Smallest radius `R` such that every cone point with `max(|r|,|s|) > R`
    /// has exponent `≥ order`.
    pub fn box_bound(&self, order: Rat) -> Result<i64> {
        let kappa = self.cone_min()?;
        let zero = Rat::zero();
        // positive cone uses (λ, μ); negative cone sees (−λ, −μ)
        let lin_pos = self.lin.0.min(zero) + self.lin.1.min(zero);
        let lin_neg = (-self.lin.0).min(zero) + (-self.lin.1).min(zero);
        let ell = lin_pos.min(lin_neg);
        // κm² + ℓm + shift is increasing for m ≥ −ℓ/(2κ)
        let vertex = (-ell / (kappa * Rat::from_integer(2))).ceil().to_integer().max(0);
        let lower = |m: i64| {
            let m = Rat::from_integer(m);
            kappa * m * m + ell * m + self.shift
        };
        let mut m = vertex;
        while lower(m + 1) < order {
            m += 1;
        }
        Ok(m)
    }

    fn exponent(&self, r: i64, s: i64) -> Rat {
        let (a, b, c) = self.quad;
        Rat::from_integer(a * r * r + b * r * s + c * s * s) + self.lin.0 * r + self.lin.1 * s + self.shift
    }

    fn sign(&self, r: i64, s: i64) -> i64 {
        let mut k = 0;
        if self.sign_r {
            k += r;
        }
        if self.sign_s {
            k += s;
        }
        if k.rem_euclid(2) == 0 { 1 } else { -1 }
    }
}

/// `(Σ_{r,s≥0} − Σ_{r,s<0})` of the spec's monomial, truncated at `order`.
///
/// `box_radius` must cover the certified bound from
/// [`HeckeSpec::box_bound`]; a smaller radius is rejected.
pub fn hecke_sum(spec: &HeckeSpec, box_radius: i64, order: Rat) -> Result<FracPowerSeries> {
    let need = spec.box_bound(order)?;
    if box_radius < need {
        return Err(Error::InvalidInput(format!(
            "box radius {box_radius} below certified bound {need} for order {order}"
        )));
    }
    let order_num = to_grid(order)?;
    let mut out = FracPowerSeries::zero(order_num);
    for r in 0..=need {
        for s in 0..=need {
            let e = spec.exponent(r, s);
            if e < order {
                out.add_term(to_grid(e)?, int(spec.sign(r, s)));
            }
            let e = spec.exponent(-r - 1, -s - 1);
            if e < order {
                out.add_term(to_grid(e)?, int(-spec.sign(-r - 1, -s - 1)));
            }
        }
    }
    Ok(out)
}

/// [`hecke_sum`] at exactly the certified radius.
pub(crate) fn hecke_sum_auto(spec: &HeckeSpec, order: Rat) -> Result<FracPowerSeries> {
    hecke_sum(spec, spec.box_bound(order)?, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn brute(spec: &HeckeSpec, radius: i64, order: Rat) -> FracPowerSeries {
        let mut out = FracPowerSeries::zero(to_grid(order).unwrap());
        for a in -radius..=radius {
            for b in -radius..=radius {
                let sign = if a >= 0 && b >= 0 {
                    1
                } else if a < 0 && b < 0 {
                    -1
                } else {
                    continue;
                };
                let e = spec.exponent(a, b);
                if e < order {
                    out.add_term(to_grid(e).unwrap(), BigRational::from_integer((sign * spec.sign(a, b)).into()));
                }
            }
        }
        out
    }

    #[test]
    fn phi_spec_order_one() {
        let spec = HeckeSpec::new((1, 3, 1), (r(1, 1), r(1, 1)), r(0, 1), true).unwrap();
        let s = hecke_sum(&spec, 5, r(1, 1)).unwrap();
        assert_eq!(s, FracPowerSeries::from_int_terms([(0, 1)], 80));
    }

    #[test]
    fn x_numerator_against_brute_force() {
        let spec = HeckeSpec::new((2, 6, 2), (r(1, 1), r(1, 1)), r(1, 10), false).unwrap();
        let order = r(1, 10) + r(3, 1);
        let s = hecke_sum(&spec, spec.box_bound(order).unwrap(), order).unwrap();
        assert_eq!(s, brute(&spec, 12, order));
        assert!(!s.is_empty());
    }

    #[test]
    fn empty_below_positive_exponents() {
        let spec = HeckeSpec::new((2, 6, 2), (r(1, 1), r(1, 1)), r(1, 10), false).unwrap();
        assert!(hecke_sum(&spec, 3, r(0, 1)).unwrap().is_empty());
    }

    #[test]
    fn radius_independence_and_rejection() {
        let spec = HeckeSpec::new((2, 6, 2), (r(-3, 1), r(-3, 1)), r(0, 1), false).unwrap();
        let order = r(40, 1);
        let bound = spec.box_bound(order).unwrap();
        let a = hecke_sum(&spec, bound, order).unwrap();
        let b = hecke_sum(&spec, bound + 5, order).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, brute(&spec, bound + 5, order));
        assert!(hecke_sum(&spec, bound - 1, order).is_err());
    }

    #[test]
    fn non_divergent_forms_rejected() {
        assert!(matches!(
            HeckeSpec::new((1, -3, 1), (r(0, 1), r(0, 1)), r(0, 1), false),
            Err(Error::NonDivergentForm(_))
        ));
        let degenerate = HeckeSpec::new((1, 2, 1), (r(1, 1), r(1, 1)), r(0, 1), true).unwrap();
        assert!(!degenerate.is_indefinite());
        let choi = HeckeSpec::new((1, 3, 1), (r(1, 1), r(1, 1)), r(0, 1), true).unwrap();
        assert!(choi.is_indefinite());
        assert!(HeckeSpec::new((1, 3, 1), (r(1, 7), r(1, 1)), r(0, 1), true).is_err());
    }
}
