//! Generators of `Γ_0(2)` and `Γ_0(4)`, their images under the multiplier
//! system of the vectors `F`, and the block structure that splits those
//! vectors into smaller mock modular forms.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Mul;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::special::zeta;
use crate::tenth::{identity6, mat_mul, monomial_inverse, transform_set, Family, Matrix6};

/// Integer 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const ONE: Mat2 = Mat2([[1, 0], [0, 1]]);
    pub const S: Mat2 = Mat2([[0, -1], [1, 0]]);

    pub fn t(k: i64) -> Mat2 {
        Mat2([[1, k], [0, 1]])
    }

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn neg(&self) -> Mat2 {
        let m = self.0;
        Mat2([[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]])
    }

    /// Equality in `PSL(2, ℤ)`.
    pub fn eq_projective(&self, other: &Mat2) -> bool {
        self == other || *self == other.neg()
    }

    /// `(aτ + b)/(cτ + d)`.
    pub fn act(&self, tau: Complex64) -> Complex64 {
        let m = self.0;
        (tau * m[0][0] as f64 + m[0][1] as f64) / (tau * m[1][0] as f64 + m[1][1] as f64)
    }

    /// The matrix acting on `2τ` induced by this one acting on `τ`:
    /// `[[a, 2b], [c/2, d]]`, defined when `c` is even.
    pub fn on_doubled(&self) -> Option<Mat2> {
        let m = self.0;
        if m[1][0] % 2 != 0 {
            return None;
        }
        Some(Mat2([[m[0][0], 2 * m[0][1]], [m[1][0] / 2, m[1][1]]]))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let mut m = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(m)
    }
}

/// A letter of a word in `S` and powers of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    S,
    T(i64),
}

pub fn word_matrix(word: &[Gen]) -> Mat2 {
    word.iter().fold(Mat2::ONE, |acc, g| {
        acc * match g {
            Gen::S => Mat2::S,
            Gen::T(k) => Mat2::t(*k),
        }
    })
}

fn mat_pow_monomial(t: &Matrix6, k: i64) -> Matrix6 {
    let base = if k < 0 { monomial_inverse(t) } else { *t };
    (0..k.abs()).fold(identity6(), |acc, _| mat_mul(&acc, &base))
}

/// Multiplier image of a word: `S ↦ M`, `T^k ↦ T^k`.
pub fn word_multiplier(f: Family, word: &[Gen]) -> Matrix6 {
    let ts = transform_set(f);
    word.iter().fold(identity6(), |acc, g| {
        let m = match g {
            Gen::S => ts.m,
            Gen::T(k) => mat_pow_monomial(&ts.t, *k),
        };
        mat_mul(&acc, &m)
    })
}

/// `V₁ = T⁻¹ S T⁻² S`.
pub const V1: [Gen; 4] = [Gen::T(-1), Gen::S, Gen::T(-2), Gen::S];
/// `V₄ = S T⁻⁴ S`.
pub const V4: [Gen; 3] = [Gen::S, Gen::T(-4), Gen::S];
/// `V₁` acting on `2τ`: `T⁻² S T⁻¹ S`.
pub const V1_DOUBLED: [Gen; 4] = [Gen::T(-2), Gen::S, Gen::T(-1), Gen::S];
/// `V₄` acting on `2τ`: `S T⁻² S`.
pub const V4_DOUBLED: [Gen; 3] = [Gen::S, Gen::T(-2), Gen::S];

/// The two congruence subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    G02,
    G04,
}

/// Argument scaling of the vector: `F(τ)` or `F(2τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scale {
    Tau,
    TwoTau,
}

/// Words for the generators of a subgroup as they act on the vector's argument.
pub fn generator_words(g: Subgroup, scale: Scale) -> [Vec<Gen>; 2] {
    let t = match scale {
        Scale::Tau => Gen::T(1),
        Scale::TwoTau => Gen::T(2),
    };
    let v: Vec<Gen> = match (g, scale) {
        (Subgroup::G02, Scale::Tau) => V1.to_vec(),
        (Subgroup::G02, Scale::TwoTau) => V1_DOUBLED.to_vec(),
        (Subgroup::G04, Scale::Tau) => V4.to_vec(),
        (Subgroup::G04, Scale::TwoTau) => V4_DOUBLED.to_vec(),
    };
    [alloc::vec![t], v]
}

/// Component blocks (0-based) into which the vector splits.
pub fn expected_blocks(f: Family, g: Subgroup, scale: Scale) -> Vec<Vec<usize>> {
    use alloc::vec;
    match (f, scale, g) {
        (Family::F1, Scale::Tau, _) => vec![vec![0, 1, 2, 3], vec![4, 5]],
        (Family::F2, Scale::Tau, _) => vec![vec![0, 1], vec![2, 3, 4, 5]],
        (Family::F1, Scale::TwoTau, Subgroup::G02) => vec![vec![0, 1], vec![2, 3, 4, 5]],
        (Family::F1, Scale::TwoTau, Subgroup::G04) => vec![vec![0, 1], vec![2, 3], vec![4, 5]],
        (Family::F2, Scale::TwoTau, Subgroup::G02) => vec![vec![0, 1, 4, 5], vec![2, 3]],
        (Family::F2, Scale::TwoTau, Subgroup::G04) => vec![vec![0, 1], vec![4, 5], vec![2, 3]],
    }
}

/// Largest modulus among entries coupling different blocks.
pub fn off_block_norm(m: &Matrix6, blocks: &[Vec<usize>]) -> f64 {
    let block_of = |i: usize| blocks.iter().position(|b| b.contains(&i));
    let mut worst: f64 = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            if block_of(i) != block_of(j) {
                worst = worst.max(m[i][j].norm());
            }
        }
    }
    worst
}

/// The displayed block matrix with `X` on rows/columns 1–2, `Y` on rows 3–4 ×
/// columns 5–6 and `Z` on rows 5–6 × columns 3–4.
pub fn displayed_block_matrix() -> Matrix6 {
    let s1 = (PI / 5.0).sin();
    let s2 = (2.0 * PI / 5.0).sin();
    let (a, b) = (s1 * s1, s2 * s2);
    let o = 2.0 * a * s2;
    let k = 4.0 / 5.0;
    let x = [
        [zeta(1, 40) * a + zeta(-7, 40) * b, zeta(-13, 40) * o],
        [zeta(3, 40) * o, zeta(9, 40) * a + zeta(17, 40) * b],
    ];
    let y = [
        [zeta(-1, 10) * a + zeta(-3, 10) * b, zeta(1, 20) * o],
        [zeta(-1, 20) * o, -zeta(1, 10) * a - zeta(3, 10) * b],
    ];
    let z = [
        [zeta(3, 20) * a + zeta(-1, 20) * b, zeta(-1, 5) * o],
        [-zeta(1, 5) * o, zeta(-3, 20) * a + zeta(1, 20) * b],
    ];
    let mut m = [[Complex64::new(0.0, 0.0); 6]; 6];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = x[i][j] * k;
            m[2 + i][4 + j] = y[i][j] * k;
            m[4 + i][2 + j] = z[i][j] * k;
        }
    }
    m
}

/// Largest entrywise difference of two 6×6 matrices, with its position.
pub fn max_entry_diff(a: &Matrix6, b: &Matrix6) -> (f64, usize, usize) {
    let mut worst = (0.0, 0, 0);
    for i in 0..6 {
        for j in 0..6 {
            let d = (a[i][j] - b[i][j]).norm();
            if d > worst.0 {
                worst = (d, i, j);
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_identities() {
        let v1 = word_matrix(&V1);
        assert_eq!(v1, Mat2([[1, 1], [-2, -1]]));
        assert_eq!(v1.det(), 1);
        let v4 = word_matrix(&V4);
        let tv1 = Mat2::t(1) * v1;
        assert!(v4.eq_projective(&(tv1 * tv1)));
        assert_eq!(v4, (tv1 * tv1).neg());
        assert!(word_matrix(&V1_DOUBLED).eq_projective(&v1.on_doubled().unwrap()));
        assert!(word_matrix(&V4_DOUBLED).eq_projective(&v4.on_doubled().unwrap()));
    }

    #[test]
    fn block_matrix_matches_product() {
        let prod = word_multiplier(Family::F1, &V1_DOUBLED);
        let (d, i, j) = max_entry_diff(&prod, &displayed_block_matrix());
        assert!(d < 1e-12, "entry ({i},{j}) differs by {d:e}");
    }

    #[test]
    fn splittings_are_block_diagonal() {
        for f in Family::ALL {
            for g in [Subgroup::G02, Subgroup::G04] {
                for sc in [Scale::Tau, Scale::TwoTau] {
                    let blocks = expected_blocks(f, g, sc);
                    for w in generator_words(g, sc) {
                        let m = word_multiplier(f, &w);
                        assert!(off_block_norm(&m, &blocks) < 1e-12, "{f:?} {g:?} {sc:?} {w:?}");
                    }
                }
            }
        }
        // a coarser group does not split F1(2τ) into three blocks
        let m = word_multiplier(Family::F1, &V1_DOUBLED);
        let fine = expected_blocks(Family::F1, Subgroup::G04, Scale::TwoTau);
        assert!(off_block_norm(&m, &fine) > 0.1);
    }
}
