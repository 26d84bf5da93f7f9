//! Congruence subgroups `Γ_0(2)`, `Γ_0(4)`: generator identities, the
//! block form of the multiplier, and the functional equation under `V₁`.

use mocktheta_core::congruence::{
    displayed_block_matrix, expected_blocks, generator_words, max_entry_diff, off_block_norm,
    word_matrix, word_multiplier, Mat2, Scale, Subgroup, V1, V1_DOUBLED, V4, V4_DOUBLED,
};
use mocktheta_core::special::sqrt_branch;
use mocktheta_core::tenth::{correction_vector, f_vector, mat_vec, Cusp, Family, Vector6};
use mocktheta_core::{Complex64, Result as CoreResult};

use super::{eval_tol, Params, Suite};
use crate::report::{CheckResult, Point};

fn exact(name: &str, ok: bool, detail: String) -> CheckResult {
    let c = CheckResult::new(name, Point::None, if ok { 0.0 } else { 1.0 }, 0.0);
    if ok {
        c
    } else {
        c.with_note(detail)
    }
}

fn block_checks(s: &mut Suite, g: Subgroup) {
    let tol = 1e-12;
    for f in Family::ALL {
        for scale in [Scale::Tau, Scale::TwoTau] {
            let blocks = expected_blocks(f, g, scale);
            let arg = match scale {
                Scale::Tau => "tau",
                Scale::TwoTau => "2tau",
            };
            let worst = generator_words(g, scale)
                .iter()
                .map(|w| off_block_norm(&word_multiplier(f, w), &blocks))
                .fold(0.0, f64::max);
            let blocks_1: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect();
            s.push(
                CheckResult::new(format!("{}({arg}) blocks {blocks_1:?}", f.name()), Point::None, worst, tol),
            );
        }
    }
}

/// `F⁽¹⁾(2V₁τ) = √(2τ+1) B (F⁽¹⁾(2τ) + i∫_1^{i∞} g⁽¹⁾(z)/√(−i(z+2τ)) dz)`.
pub(crate) fn v1_sides(tau: Complex64, et: f64) -> CoreResult<(Vector6, Vector6)> {
    let b = displayed_block_matrix();
    let v1 = word_matrix(&V1);
    let lhs = f_vector(Family::F1, v1.act(tau) * 2.0, et)?.entries;
    let w = tau * 2.0;
    let fw = f_vector(Family::F1, w, et)?.entries;
    let c = correction_vector(Family::F1, w, Cusp::One, et)?.entries;
    let sum: Vector6 = std::array::from_fn(|k| fw[k] + c[k]);
    let root = sqrt_branch(w + 1.0);
    let bs = mat_vec(&b, &sum);
    Ok((lhs, bs.map(|z| z * root)))
}

pub(crate) fn g02(s: &mut Suite, p: &Params) {
    let v1 = word_matrix(&V1);
    s.push(exact("V1 = T^-1 S T^-2 S = [[1,1],[-2,-1]]", v1 == Mat2([[1, 1], [-2, -1]]), format!("{v1:?}")));
    let dbl = v1.on_doubled().map(|m| m.eq_projective(&word_matrix(&V1_DOUBLED)));
    s.push(exact("V1 on 2tau is T^-2 S T^-1 S", dbl == Some(true), format!("{:?}", v1.on_doubled())));

    let prod = word_multiplier(Family::F1, &V1_DOUBLED);
    let (d, i, j) = max_entry_diff(&prod, &displayed_block_matrix());
    let c = CheckResult::new("T^-2 M T^-1 M = block(X; Y, Z)", Point::None, d, 1e-12);
    s.push(if c.pass { c } else { c.with_note(format!("worst entry ({}, {})", i + 1, j + 1)) });
    block_checks(s, Subgroup::G02);

    let tol = p.tol(1e-7);
    let et = eval_tol(tol);
    let mut taus = vec![Complex64::new(0.1, 1.2), Complex64::new(0.0, 0.9)];
    taus.extend(p.taus_upto(5));
    for (idx, tau) in taus.into_iter().enumerate() {
        s.check_vector(&format!("q{idx:02} F1(2 V1 tau)"), tau.into(), tol, v1_sides(tau, et));
    }
}

pub(crate) fn g04(s: &mut Suite, _p: &Params) {
    let v4 = word_matrix(&V4);
    let tv1 = Mat2::t(1) * word_matrix(&V1);
    let sq = tv1 * tv1;
    s.push(exact("V4 = S T^-4 S = [[-1,0],[-4,-1]]", v4 == Mat2([[-1, 0], [-4, -1]]), format!("{v4:?}")));
    s.push(exact("V4 = (T V1)^2 in PSL2", v4.eq_projective(&sq), format!("{v4:?} vs {sq:?}")));
    s.push(exact("V4 = -(T V1)^2 in SL2", v4 == sq.neg(), format!("{v4:?} vs {sq:?}")));
    let dbl = v4.on_doubled().map(|m| m.eq_projective(&word_matrix(&V4_DOUBLED)));
    s.push(exact("V4 on 2tau is S T^-2 S", dbl == Some(true), format!("{:?}", v4.on_doubled())));
    block_checks(s, Subgroup::G04);
}
