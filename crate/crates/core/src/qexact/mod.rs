//! Exact q-series with rational coefficients and fractional exponents.
//!
//! Exponents live on the grid `(1/80)ℤ`: every exponent that occurs in the
//! tenth-order vectors, the theta constants and their arguments has a
//! denominator dividing 80. A series stores its nonzero terms below a
//! truncation order and is certified correct for every exponent below it.

mod hecke;
mod identities;

pub use hecke::{hecke_sum, HeckeSpec};
pub use identities::{
    choi_rhs, f1_component_lhs, f1_component_rhs, verify_choi_identity,
    verify_choi_identity_with_form, verify_f1_printed_row, verify_f1_series,
    verify_f1_t_phases, verify_theta_split, verify_theta_split_perturbed, F1Row,
    IdentityReport, Mismatch,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
pub use crate::special::Rat;

/// Common denominator of every exponent handled by the exact engine.
pub const EXP_DEN: i64 = 80;

/// Converts a rational exponent to its numerator over [`EXP_DEN`].
pub fn to_grid(r: Rat) -> Result<i64> {
    let den = *r.denom();
    if EXP_DEN % den != 0 {
        return Err(Error::OffGrid(format!("{r}")));
    }
    Ok(r.numer() * (EXP_DEN / den))
}

/// Inverse of [`to_grid`].
pub fn from_grid(n: i64) -> Rat {
    Rat::new(n, EXP_DEN)
}

/// Sparse truncated Laurent-type series `Σ c_e q^e`, `e ∈ (1/80)ℤ`.
#[derive(Clone, PartialEq, Eq)]
pub struct FracPowerSeries {
    terms: BTreeMap<i64, BigRational>,
    order: i64,
}

impl fmt::Debug for FracPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.to_text(), from_grid(self.order))
    }
}

impl FracPowerSeries {
    /// The zero series, known up to `q^{order_num/80}`.
    pub fn zero(order_num: i64) -> Self {
        FracPowerSeries { terms: BTreeMap::new(), order: order_num }
    }

    pub fn one(order_num: i64) -> Self {
        Self::monomial(BigRational::one(), 0, order_num)
    }

    pub fn monomial(coeff: BigRational, exp_num: i64, order_num: i64) -> Self {
        let mut s = Self::zero(order_num);
        s.add_term(exp_num, coeff);
        s
    }

    /// Builds a series from `(exponent numerator, coefficient)` pairs; repeated
    /// exponents accumulate, zeros and terms at or above the order are dropped.
    pub fn from_terms<I>(terms: I, order_num: i64) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut s = Self::zero(order_num);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Same as [`from_terms`](Self::from_terms) with integer coefficients.
    pub fn from_int_terms<I>(terms: I, order_num: i64) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_terms(terms.into_iter().map(|(e, c)| (e, int(c))), order_num)
    }

    pub(crate) fn add_term(&mut self, exp_num: i64, coeff: BigRational) {
        if exp_num >= self.order || coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp_num).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp_num);
        }
    }

    /// Truncation order numerator (the order is `order_num / 80`).
    pub fn order_num(&self) -> i64 {
        self.order
    }

    pub fn order(&self) -> Rat {
        from_grid(self.order)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^{exp_num/80}`, zero if absent.
    pub fn coeff(&self, exp_num: i64) -> BigRational {
        self.terms.get(&exp_num).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lead(&self) -> Option<(i64, &BigRational)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    fn lead_or_order(&self) -> i64 {
        self.lead().map(|(e, _)| e).unwrap_or(self.order)
    }

    /// Drops everything at or above `order_num` (never raises the order).
    pub fn truncate(&self, order_num: i64) -> Self {
        let order = order_num.min(self.order);
        Self::from_terms(
            self.terms.range(..order).map(|(e, c)| (*e, c.clone())),
            order,
        )
    }

    /// Multiplication by `q^{exp_num/80}`.
    pub fn shift(&self, exp_num: i64) -> Self {
        FracPowerSeries {
            terms: self.terms.iter().map(|(e, c)| (e + exp_num, c.clone())).collect(),
            order: self.order.saturating_add(exp_num),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        FracPowerSeries {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
            order: self.order,
        }
    }

    /// Whether every stored exponent is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % EXP_DEN == 0)
    }

    /// Exact quotient `self / rhs`.
    ///
    /// The leading monomial of `rhs` is factored out and the remaining unit
    /// is inverted by long division. The result is certified up to
    /// `min(ord a − lead b, ord b − 2 lead b + lead a)`.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let (lb, cb) = rhs.lead().ok_or(Error::NotInvertible)?;
        let cb = cb.clone();
        let la = self.lead_or_order();
        let order = (self.order - lb).min(rhs.order - 2 * lb + la);
        let mut out = Self::zero(order);
        let mut rem: BTreeMap<i64, BigRational> = self
            .terms
            .range(..order.saturating_add(lb))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        let tail: Vec<(i64, BigRational)> =
            rhs.terms.iter().skip(1).map(|(e, c)| (*e, c.clone())).collect();
        while let Some((e, c)) = rem.pop_first() {
            let qe = e - lb;
            if qe >= order {
                break;
            }
            let qc = c / &cb;
            for (eb, c2) in &tail {
                let target = qe + eb;
                if target - lb >= order {
                    break;
                }
                let slot = rem.entry(target).or_insert_with(BigRational::zero);
                *slot -= &qc * c2;
                if slot.is_zero() {
                    rem.remove(&target);
                }
            }
            out.add_term(qe, qc);
        }
        Ok(out)
    }

    /// Renders the series as `c q^e + ...`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let exp = from_grid(*e);
            let unit = mag.is_one();
            if exp.is_zero() {
                s.push_str(&format!("{mag}"));
                continue;
            }
            if !unit {
                s.push_str(&format!("{mag}"));
            }
            if exp.is_one() {
                s.push('q');
            } else if exp.is_integer() && !exp.is_negative() {
                s.push_str(&format!("q^{exp}"));
            } else {
                s.push_str(&format!("q^({exp})"));
            }
        }
        s
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Add for &FracPowerSeries {
    type Output = FracPowerSeries;
    fn add(self, rhs: &FracPowerSeries) -> FracPowerSeries {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (e, c) in rhs.terms.range(..order) {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &FracPowerSeries {
    type Output = FracPowerSeries;
    fn neg(self) -> FracPowerSeries {
        FracPowerSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            order: self.order,
        }
    }
}

impl Sub for &FracPowerSeries {
    type Output = FracPowerSeries;
    fn sub(self, rhs: &FracPowerSeries) -> FracPowerSeries {
        self + &(-rhs)
    }
}

impl Mul for &FracPowerSeries {
    type Output = FracPowerSeries;
    fn mul(self, rhs: &FracPowerSeries) -> FracPowerSeries {
        let order = self
            .order
            .saturating_add(rhs.lead_or_order())
            .min(rhs.order.saturating_add(self.lead_or_order()));
        let mut out = FracPowerSeries::zero(order);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                if ea + eb >= order {
                    break;
                }
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

/// Arithmetic selector for [`series_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact binary operation with certified order propagation.
pub fn series_op(op: SeriesOp, a: &FracPowerSeries, b: &FracPowerSeries) -> Result<FracPowerSeries> {
    Ok(match op {
        SeriesOp::Add => a + b,
        SeriesOp::Sub => a - b,
        SeriesOp::Mul => a * b,
        SeriesOp::Div => a.checked_div(b)?,
    })
}

/// Substitution rules for [`substitute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `q → −q`; requires integer exponents.
    Negate,
    /// `q → q^k` for positive rational `k`.
    Power(Rat),
    /// `q → −q^k`: the sign `(−1)^e` is taken on the original integer
    /// exponent `e` before rescaling.
    NegatedPower(Rat),
}

/// Applies a substitution to every term (and to the order).
pub fn substitute(s: &FracPowerSeries, rule: Substitution) -> Result<FracPowerSeries> {
    let (negate, k) = match rule {
        Substitution::Negate => (true, Rat::one()),
        Substitution::Power(k) => (false, k),
        Substitution::NegatedPower(k) => (true, k),
    };
    if k <= Rat::zero() {
        return Err(Error::InvalidInput(format!("substitution power {k} must be positive")));
    }
    if negate && !s.has_integer_exponents() {
        return Err(Error::InvalidInput(
            "sign twist q → −q needs integer exponents".into(),
        ));
    }
    let scale = |e: i64| -> Result<i64> {
        let r = from_grid(e) * k;
        to_grid(r)
    };
    // an order that falls between grid points is rounded down, which is safe
    let order = {
        let r = from_grid(s.order) * k * Rat::from_integer(EXP_DEN);
        r.floor().to_integer()
    };
    let mut out = FracPowerSeries::zero(order);
    for (e, c) in &s.terms {
        let ne = scale(*e)?;
        let odd = negate && (e / EXP_DEN).rem_euclid(2) == 1;
        out.add_term(ne, if odd { -c.clone() } else { c.clone() });
    }
    Ok(out)
}

/// `Π_{k=0}^{n-1} (1 − sign·q^{start + k·step})` truncated at `order`.
///
/// `sign = −1` encodes Pochhammer symbols such as `(−q; q)_n`.
pub fn poch_series(sign: i32, start: Rat, step: Rat, n: i64, order: Rat) -> Result<FracPowerSeries> {
    if n < 0 {
        return Err(Error::InvalidInput(format!("Pochhammer length {n} is negative")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput(format!("sign must be ±1, got {sign}")));
    }
    if n > 0 && step <= Rat::zero() {
        return Err(Error::InvalidInput("Pochhammer step must be positive".into()));
    }
    let order_num = to_grid(order)?;
    let start = to_grid(start)?;
    let step = to_grid(step)?;
    let mut acc = FracPowerSeries::one(order_num);
    for k in 0..n {
        let e = start + k * step;
        let factor = if e == 0 {
            FracPowerSeries::from_int_terms([(0, 1 - sign as i64)], order_num)
        } else {
            FracPowerSeries::from_int_terms([(0, 1), (e, -(sign as i64))], order_num)
        };
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// The four tenth-order mock theta functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MockTheta {
    Phi,
    Psi,
    X,
    Chi,
}

impl MockTheta {
    pub const ALL: [MockTheta; 4] = [MockTheta::Phi, MockTheta::Psi, MockTheta::X, MockTheta::Chi];

    pub fn name(self) -> &'static str {
        match self {
            MockTheta::Phi => "phi",
            MockTheta::Psi => "psi",
            MockTheta::X => "X",
            MockTheta::Chi => "chi",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "phi" => Some(MockTheta::Phi),
            "psi" => Some(MockTheta::Psi),
            "X" | "x" => Some(MockTheta::X),
            "chi" => Some(MockTheta::Chi),
            _ => None,
        }
    }
}

/// Truncated expansion of a mock theta function in integer powers of `q`.
///
/// Each summand is divided by its Pochhammer denominator exactly; summands
/// whose leading exponent is at or above `order` are skipped.
pub fn mock_theta_series(name: MockTheta, order: Rat) -> Result<FracPowerSeries> {
    if order <= Rat::zero() {
        return Err(Error::InvalidInput(format!("order {order} must be positive")));
    }
    let order_num = to_grid(order)?;
    let one = Rat::one();
    let mut total = FracPowerSeries::zero(order_num);
    let mut n: i64 = 0;
    loop {
        let (lead, sign, den) = match name {
            MockTheta::Phi => (n * (n + 1) / 2, 1, poch_series(1, one, Rat::from_integer(2), n + 1, order)?),
            MockTheta::Psi => ((n + 1) * (n + 2) / 2, 1, poch_series(1, one, Rat::from_integer(2), n + 1, order)?),
            MockTheta::X => (n * n, if n % 2 == 0 { 1 } else { -1 }, poch_series(-1, one, one, 2 * n, order)?),
            MockTheta::Chi => ((n + 1) * (n + 1), if n % 2 == 0 { 1 } else { -1 }, poch_series(-1, one, one, 2 * n + 1, order)?),
        };
        let lead_num = lead * EXP_DEN;
        if lead_num >= order_num {
            break;
        }
        let num = FracPowerSeries::monomial(int(sign), lead_num, order_num);
        total = &total + &num.checked_div(&den)?;
        n += 1;
    }
    Ok(total)
}

/// Expansion of `θ_kind(scale·τ)` in `q = e^{2πiτ}`.
pub fn theta_series(kind: u8, arg_scale: Rat, order: Rat) -> Result<FracPowerSeries> {
    if arg_scale <= Rat::zero() {
        return Err(Error::InvalidInput(format!("argument scale {arg_scale} must be positive")));
    }
    let order_num = to_grid(order)?;
    let half = Rat::new(1, 2);
    let mut out = FracPowerSeries::zero(order_num);
    let mut n: i64 = 0;
    loop {
        let (x, partner_distinct, sign) = match kind {
            2 => (Rat::from_integer(n) + half, true, 1),
            3 => (Rat::from_integer(n), n != 0, 1),
            4 => (Rat::from_integer(n), n != 0, if n % 2 == 0 { 1 } else { -1 }),
            _ => return Err(Error::InvalidInput(format!("unknown theta kind {kind}"))),
        };
        let e = arg_scale * x * x * half;
        let e_num = to_grid(e)?;
        if e_num >= order_num {
            break;
        }
        let mult = if partner_distinct { 2 } else { 1 };
        out.add_term(e_num, int(sign * mult));
        n += 1;
    }
    Ok(out)
}
