use mocktheta_core::congruence::{word_matrix, Gen, Mat2};
use mocktheta_core::qexact::{from_grid, theta_series, to_grid, FracPowerSeries};
use mocktheta_core::special::{sqrt_branch, theta3, Rat};
use mocktheta_core::tenth::{f_vector, h_vector, mat_vec, transform_set, Family};
use mocktheta_core::zwegers::{vartheta, IndefLattice, ThetaChar};
use mocktheta_core::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn tau() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, 0.5f64..2.0).prop_map(|(x, y)| Complex64::new(x, y))
}

fn series() -> impl Strategy<Value = FracPowerSeries> {
    prop::collection::vec((0i64..400, -5i64..6), 0..8).prop_map(|terms| {
        FracPowerSeries::from_terms(terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))), 400)
    })
}

fn word() -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(prop_oneof![Just(Gen::S), (-4i64..5).prop_map(Gen::T)], 0..8)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grid_round_trip(n in -10_000i64..10_000) {
        prop_assert_eq!(to_grid(from_grid(n)).unwrap(), n);
    }

    #[test]
    fn off_grid_rejected(n in 1i64..1000, d in prop::sample::select(vec![3i64, 7, 11, 13])) {
        prop_assume!(n % d != 0);
        prop_assert!(to_grid(Rat::new(n, d)).is_err());
    }

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_empty());
    }

    #[test]
    fn division_inverts_multiplication(a in series(), b in series()) {
        let unit = FracPowerSeries::one(400);
        let b = &unit + &b.shift(80);
        let prod = &a * &b;
        prop_assert_eq!(prod.checked_div(&b).unwrap(), a.truncate(prod.order_num()));
    }

    #[test]
    fn principal_root(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let z = Complex64::new(re, im);
        let r = sqrt_branch(z);
        prop_assert!(close(r * r, z, 1e-14));
        prop_assert!(r.re >= 0.0);
    }

    #[test]
    fn words_stay_in_sl2(w in word()) {
        let m = word_matrix(&w);
        prop_assert_eq!(m.det(), 1);
        prop_assert!(m.eq_projective(&m.neg()));
    }

    #[test]
    fn word_action_composes(w1 in word(), w2 in word(), t in tau()) {
        let (a, b) = (word_matrix(&w1), word_matrix(&w2));
        let lhs = (a * b).act(t);
        prop_assert!(close(lhs, a.act(b.act(t)), 1e-9));
        prop_assert!(lhs.im > 0.0);
    }

    #[test]
    fn theta3_exact_and_numeric_agree(t in tau()) {
        let s = theta_series(3, Rat::from_integer(1), Rat::from_integer(40)).unwrap();
        let sum: Complex64 = s.terms().map(|(e, c)| {
            let c: f64 = num_traits::ToPrimitive::to_f64(c).unwrap();
            (Complex64::new(0.0, 2.0 * std::f64::consts::PI * e as f64 / 80.0) * t).exp() * c
        }).sum();
        prop_assert!(close(theta3(t).unwrap(), sum, 1e-12));
    }

    #[test]
    fn vartheta_is_odd(t in tau(), v in 1i64..5, k in 0i64..2, w in 0i64..3) {
        let l = IndefLattice::TENTH;
        let ch = ThetaChar::tenth(v, k, w);
        let odd = ThetaChar { a: [-ch.a[0], -ch.a[1]], b: [-ch.b[0], -ch.b[1]] };
        let x = vartheta(&l, &ch, t, 1e-12).unwrap().value;
        let y = vartheta(&l, &odd, t, 1e-12).unwrap().value;
        prop_assert!(close(x, -y, 1e-10));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn t_law_for_both_families(t in tau()) {
        for f in Family::ALL {
            let ts = transform_set(f);
            let lhs = f_vector(f, t + 1.0, 1e-12).unwrap().entries;
            let rhs = mat_vec(&ts.t, &f_vector(f, t, 1e-12).unwrap().entries);
            for k in 0..6 {
                prop_assert!(close(lhs[k], rhs[k], 1e-10), "{} [{}]", f.name(), k + 1);
            }
            let lhs = h_vector(f, t + 1.0, 1e-12).unwrap().entries;
            let rhs = mat_vec(&ts.t, &h_vector(f, t, 1e-12).unwrap().entries);
            for k in 0..6 {
                prop_assert!(close(lhs[k], rhs[k], 1e-10), "H {} [{}]", f.name(), k + 1);
            }
        }
    }
}

#[test]
fn generators_have_finite_order_in_psl2() {
    let s2 = Mat2::S * Mat2::S;
    assert_eq!(s2, Mat2::ONE.neg());
    let st = Mat2::S * Mat2::t(1);
    assert!((st * st * st).eq_projective(&Mat2::ONE));
}
