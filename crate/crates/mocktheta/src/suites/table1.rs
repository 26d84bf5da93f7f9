//! The P-sets, ratios and orthogonal-complement theta functions of the
//! remainder formula for the eight characteristics `a = (v/10)e + (k/2)e_x`,
//! compared against their tabulated values.

use mocktheta_core::special::{theta2, theta3, theta4, zeta, Rat};
use mocktheta_core::zwegers::{enumerate_p, perp_data, rv, theta_perp, IndefLattice, Vec2};
use mocktheta_core::{Complex64, Result as CoreResult};

use super::{eval_tol, scaled, Params, Suite};
use crate::report::{CheckResult, Point};

const L: IndefLattice = IndefLattice::TENTH;

/// Closed forms appearing in the table cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closed {
    /// `½θ₂(τ)`.
    HalfTheta2,
    /// `θ₂(4τ)`.
    Theta2Of4,
    /// `θ₃(4τ)`.
    Theta3Of4,
    /// `θ₄(2τ)`.
    Theta4Of2,
    Zero,
    /// `½ζ₁₆^k θ₂((τ+1)/2)`.
    HalfShifted(i64),
}

impl Closed {
    pub fn eval(self, tau: Complex64) -> CoreResult<Complex64> {
        Ok(match self {
            Closed::HalfTheta2 => theta2(tau)? * 0.5,
            Closed::Theta2Of4 => theta2(tau * 4.0)?,
            Closed::Theta3Of4 => theta3(tau * 4.0)?,
            Closed::Theta4Of2 => theta4(tau * 2.0)?,
            Closed::Zero => Complex64::new(0.0, 0.0),
            Closed::HalfShifted(k) => zeta(k, 16) * theta2((tau + 1.0) / 2.0)? * 0.5,
        })
    }
}

/// One cone's half of a table row; entries pair up in listed order.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeCells {
    pub p_set: [Vec2; 2],
    pub ratios: [Rat; 2],
    /// `θ^{⊥c}_{μ,0}(τ)`.
    pub plain: [Closed; 2],
    /// `θ^{⊥c}_{μ,e/20}(τ/2)`.
    pub twisted: [Closed; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub v: i64,
    pub k: i64,
    pub c1: ConeCells,
    pub c2: ConeCells,
}

impl Table1Row {
    pub fn a(&self) -> Vec2 {
        [Rat::new(self.v, 10) + Rat::new(self.k, 2), Rat::new(self.v, 10)]
    }
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn plus_half_ex(x: Vec2) -> Vec2 {
    [x[0] + r(1, 2), x[1]]
}

/// The table, row by row. Rows marked "↑" repeat the row above with the
/// P-set translated by `½e_x` and, for `c₁`, the ratios lowered by `5/20`.
pub fn table1_rows() -> Vec<Table1Row> {
    use Closed::*;
    let hs = HalfShifted;
    let cells = |p: [Vec2; 2], rt: [Rat; 2], plain: [Closed; 2], twisted: [Closed; 2]| ConeCells {
        p_set: p,
        ratios: rt,
        plain,
        twisted,
    };
    // (c1 plain, c1 twisted, c2 plain, c2 twisted) for the eight rows
    let theta_cells: [[[Closed; 2]; 4]; 8] = [
        [[HalfTheta2; 2], [hs(-3), hs(1)], [HalfTheta2; 2], [hs(1), hs(-3)]],
        [[Theta2Of4, Theta3Of4], [Zero, Theta4Of2], [HalfTheta2; 2], [hs(-3), hs(1)]],
        [[Theta3Of4, Theta2Of4], [Theta4Of2, Zero], [Theta2Of4, Theta3Of4], [Zero, Theta4Of2]],
        [[HalfTheta2; 2], [hs(-3), hs(1)], [Theta3Of4, Theta2Of4], [Theta4Of2, Zero]],
        [[HalfTheta2; 2], [hs(1), hs(-3)], [HalfTheta2; 2], [hs(-3), hs(1)]],
        [[Theta3Of4, Theta2Of4], [Theta4Of2, Zero], [HalfTheta2; 2], [hs(1), hs(-3)]],
        [[Theta2Of4, Theta3Of4], [Zero, Theta4Of2], [Theta3Of4, Theta2Of4], [Theta4Of2, Zero]],
        [[HalfTheta2; 2], [hs(1), hs(-3)], [Theta2Of4, Theta3Of4], [Zero, Theta4Of2]],
    ];
    let mut rows = Vec::new();
    for (i, [p1, t1, p2, t2]) in theta_cells.into_iter().enumerate() {
        let v = 1 + (i / 2) as i64;
        let k = (i % 2) as i64;
        let base1 = [rv(-(10 - v), 10), rv(-(20 - v), 10)];
        let ratios1 = [r(10 - v, 20), r(20 - v, 20)];
        let base2 = [rv(v, 10), rv(10 + v, 10)];
        let ratios2 = [r(v, 20), r(10 + v, 20)];
        let (c1, c2) = if k == 0 {
            (cells(base1, ratios1, p1, t1), cells(base2, ratios2, p2, t2))
        } else {
            (
                cells(base1.map(plus_half_ex), ratios1.map(|x| x - r(5, 20)), p1, t1),
                cells(base2.map(plus_half_ex), ratios2, p2, t2),
            )
        };
        rows.push(Table1Row { v, k, c1, c2 });
    }
    rows
}

fn fmt_vec(x: &Vec2) -> String {
    format!("({}, {})", x[0], x[1])
}

/// Recomputed P-set and ratios against the table, exactly.
fn exact_cone(row: &Table1Row, which: usize, cells: &ConeCells) -> CheckResult {
    let name = format!("a=({}/10)e+({}/2)ex c{which} P-set", row.v, row.k);
    let c = L.c(which);
    let pd = match perp_data(&L, c) {
        Ok(pd) => pd,
        Err(e) => return CheckResult::failed(name, Point::None, 0.0, e.to_string()),
    };
    let computed = match enumerate_p(&L, c, &row.a()) {
        Ok(v) => v,
        Err(e) => return CheckResult::failed(name, Point::None, 0.0, e.to_string()),
    };
    let mut problems = Vec::new();
    if computed.len() != 2 {
        problems.push(format!("{} representatives", computed.len()));
    }
    for (mu, ratio) in cells.p_set.iter().zip(&cells.ratios) {
        if pd.ratio(mu) != *ratio {
            problems.push(format!("{} has ratio {} not {}", fmt_vec(mu), pd.ratio(mu), ratio));
        }
        if !computed.iter().any(|(m, rt)| pd.equivalent(m, mu) && rt == ratio) {
            problems.push(format!("{} missing from recomputed set", fmt_vec(mu)));
        }
    }
    if problems.is_empty() {
        CheckResult::new(name, Point::None, 0.0, 0.0)
    } else {
        CheckResult::new(name, Point::None, problems.len() as f64, 0.0).with_note(problems.join("; "))
    }
}

pub(crate) fn table1(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-9);
    let et = eval_tol(tol);
    let taus = p.taus_upto(3);
    for row in table1_rows() {
        for (which, cells) in [(1, &row.c1), (2, &row.c2)] {
            s.push(exact_cone(&row, which, cells));
            let c = L.c(which);
            for (j, mu) in cells.p_set.iter().enumerate() {
                for tau in &taus {
                    let tag = format!("a=({}/10)e+({}/2)ex c{which} mu{}", row.v, row.k, j + 1);
                    let b0 = [Rat::from_integer(0); 2];
                    s.check(
                        format!("{tag} theta(tau)"),
                        (*tau).into(),
                        tol,
                        (|| Ok(scaled(theta_perp(&L, c, mu, &b0, *tau, et)?, cells.plain[j].eval(*tau)?)))(),
                    );
                    s.check(
                        format!("{tag} theta_e/20(tau/2)"),
                        (*tau).into(),
                        tol,
                        (|| Ok(scaled(theta_perp(&L, c, mu, &rv(1, 20), *tau / 2.0, et)?, cells.twisted[j].eval(*tau)?)))(),
                    );
                }
            }
        }
    }
}
