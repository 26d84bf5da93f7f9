//! Engine output against oracles built independently in this file.

use mocktheta_core::qexact::{mock_theta_series, theta_series, MockTheta, EXP_DEN};
use mocktheta_core::special::{erf_real, erfc_real, theta2, theta3, theta4, QuadratureRule, Rat};
use mocktheta_core::tenth::{mock_theta_numeric, mordell_k, mordell_l};
use mocktheta_core::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;

const N: usize = 50;

/// Integer power series truncated below `q^N`.
type Poly = Vec<i128>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; N];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, y) in b.iter().enumerate().take(N - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 / (1 + s q^k)` for `k ≥ 1`.
fn inv_binomial(s: i128, k: usize) -> Poly {
    let mut out = vec![0; N];
    let mut p = 1;
    for e in (0..N).step_by(k) {
        out[e] = p;
        p *= -s;
    }
    out
}

/// Defining sums with every Pochhammer factor inverted as a geometric series.
fn oracle(name: MockTheta) -> Poly {
    let mut total = vec![0; N];
    for n in 0..N {
        let (lead, sign, factors): (usize, i128, Vec<(i128, usize)>) = match name {
            MockTheta::Phi => (n * (n + 1) / 2, 1, (0..=n).map(|j| (-1, 2 * j + 1)).collect()),
            MockTheta::Psi => ((n + 1) * (n + 2) / 2, 1, (0..=n).map(|j| (-1, 2 * j + 1)).collect()),
            MockTheta::X => (n * n, if n % 2 == 0 { 1 } else { -1 }, (1..=2 * n).map(|j| (1, j)).collect()),
            MockTheta::Chi => ((n + 1) * (n + 1), if n % 2 == 0 { 1 } else { -1 }, (1..=2 * n + 1).map(|j| (1, j)).collect()),
        };
        if lead >= N {
            break;
        }
        let mut term = vec![0; N];
        term[lead] = sign;
        for (s, k) in factors {
            term = mul(&term, &inv_binomial(s, k));
        }
        for e in 0..N {
            total[e] += term[e];
        }
    }
    total
}

fn big(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn mock_theta_series_match_naive_expansion() {
    for m in MockTheta::ALL {
        let s = mock_theta_series(m, Rat::from_integer(N as i64)).unwrap();
        let want = oracle(m);
        for (e, c) in want.iter().enumerate() {
            assert_eq!(s.coeff(e as i64 * EXP_DEN), big(*c), "{} at q^{e}", m.name());
        }
        assert!(s.terms().all(|(e, _)| e % EXP_DEN == 0));
    }
}

#[test]
fn numeric_sums_match_truncated_expansion() {
    // at q = 0.3 the q^50 tail is below 1e-25
    for m in MockTheta::ALL {
        let want: f64 = oracle(m).iter().enumerate().map(|(e, c)| *c as f64 * 0.3f64.powi(e as i32)).sum();
        let got = mock_theta_numeric(m, Complex64::new(0.3, 0.0), 1e-14).unwrap();
        assert!((got.value.re - want).abs() < 1e-13 && got.value.im == 0.0, "{}", m.name());
    }
}

#[test]
fn theta4_series_is_the_triple_product() {
    // x = q^{1/2}: Σ(−1)^n x^{n²} = Π (1 − x^{2n})(1 − x^{2n−1})²
    let mut prod: Poly = vec![0; N];
    prod[0] = 1;
    for n in 1..N {
        for (k, power) in [(2 * n, 1), (2 * n - 1, 2)] {
            if k >= N {
                continue;
            }
            for _ in 0..power {
                let mut f = vec![0; N];
                f[0] = 1;
                f[k] = -1;
                prod = mul(&prod, &f);
            }
        }
    }
    // exponents of x are halves of q-exponents
    let s = theta_series(4, Rat::from_integer(1), Rat::new(N as i64, 2)).unwrap();
    for (k, c) in prod.iter().enumerate() {
        assert_eq!(s.coeff(k as i64 * EXP_DEN / 2), big(*c), "x^{k}");
    }
}

#[test]
fn theta_constants_at_i() {
    // θ₃(i) = Σ e^{−πn²} = π^{1/4}/Γ(3/4)
    let t3 = 1.086_434_811_213_308_f64;
    let i = Complex64::new(0.0, 1.0);
    assert!((theta3(i).unwrap() - t3).norm() < 1e-15);
    // θ₂(i) = θ₄(i) = 2^{−1/4} θ₃(i)
    let t2 = t3 / 2f64.powf(0.25);
    assert!((theta2(i).unwrap() - t2).norm() < 1e-15);
    assert!((theta4(i).unwrap() - t2).norm() < 1e-15);
}

#[test]
fn error_function_reference_values() {
    for (x, want) in [(0.5, 0.520_499_877_813_046_5), (1.0, 0.842_700_792_949_714_9), (2.0, 0.995_322_265_018_952_7)] {
        assert!((erf_real(x) - want).abs() < 1e-15, "erf({x})");
        assert!((erf_real(-x) + want).abs() < 1e-15);
    }
    let want = 2.209_049_699_858_544e-5;
    assert!((erfc_real(3.0) / want - 1.0).abs() < 1e-13);
    let want = 1.537_459_794_428_035e-12;
    assert!((erfc_real(5.0) / want - 1.0).abs() < 1e-12);
}

#[test]
fn gauss_legendre_integrates_polynomials_exactly() {
    let rule = QuadratureRule::gauss_legendre(10);
    for d in 0..20 {
        let got: f64 = rule.nodes().iter().zip(rule.weights()).map(|(x, w)| w * x.powi(d)).sum();
        let want = if d % 2 == 0 { 2.0 / (d as f64 + 1.0) } else { 0.0 };
        assert!((got - want).abs() < 1e-14, "x^{d}");
    }
}

/// Composite Simpson on `[0, 12]`, enough for `Re β ≥ 1`.
fn simpson(f: impl Fn(f64) -> f64) -> f64 {
    let n = 200_000;
    let h = 12.0 / n as f64;
    let mut s = f(0.0) + f(12.0);
    for k in 1..n {
        s += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn mordell_integrals_on_the_real_axis() {
    for beta in [1.0, 2.5] {
        for j in [1i64, 3] {
            let k = simpson(|x| (-5.0 * beta * x * x).exp() * (j as f64 * beta * x).cosh() / (5.0 * beta * x).cosh());
            let got = mordell_k(Rat::from_integer(j), Complex64::new(beta, 0.0), 1e-12).unwrap();
            assert!((got.re - k).abs() < 1e-11 && got.im.abs() < 1e-15, "K_{j}({beta})");
        }
        for j in [1i64, 2, 4] {
            let l = simpson(|x| {
                let r = if x == 0.0 { j as f64 / 5.0 } else { (j as f64 * beta * x).sinh() / (5.0 * beta * x).sinh() };
                (-5.0 * beta * x * x).exp() * r
            });
            let got = mordell_l(Rat::from_integer(j), Complex64::new(beta, 0.0), 1e-12).unwrap();
            assert!((got.re - l).abs() < 1e-11, "L_{j}({beta})");
        }
    }
}
