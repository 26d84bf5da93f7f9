//! Seeded sample points `τ = x + iy`, `x ∈ [−½, ½]`, `y ∈ [½, 2]`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub const DEFAULT_SEED: u64 = 20231004;
pub const DEFAULT_POINTS: usize = 20;

pub fn sample_points(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x = rng.gen_range(-0.5..=0.5);
            let y = rng.gen_range(0.5..=2.0);
            Complex64::new(x, y)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let a = sample_points(DEFAULT_SEED, 20);
        assert_eq!(a, sample_points(DEFAULT_SEED, 20));
        assert_ne!(a, sample_points(DEFAULT_SEED + 1, 20));
        assert_eq!(&sample_points(DEFAULT_SEED, 5)[..], &a[..5]);
        for t in a {
            assert!(t.re.abs() <= 0.5 && (0.5..=2.0).contains(&t.im));
        }
    }
}
