//! Deliberately broken inputs. Every check here is expected to fail; the
//! suite passing would mean a harness that cannot detect anything.

use mocktheta_core::qexact::{
    verify_choi_identity_with_form, verify_f1_printed_row, verify_theta_split_perturbed, MockTheta,
};
use mocktheta_core::special::Rat;
use mocktheta_core::tenth::{transform_set, Family};
use num_complex::Complex64;

use super::exact::exact_check;
use super::forms::s_law_with;
use super::{eval_tol, scaled, Params, Suite};

pub(crate) fn negative_controls(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let et = eval_tol(tol);
    for f in Family::ALL {
        let mut m = transform_set(f).m;
        m[0][0] += Complex64::new(0.1, 0.0);
        for (idx, tau) in p.taus_upto(3).into_iter().enumerate() {
            let worst = s_law_with(f, &m, tau, et)
                .map(|(l, r)| (0..6).map(|k| scaled(l[k], r[k])).fold(0.0, f64::max));
            s.check(format!("{} p{idx:02} S-law with M[1][1] + 0.1", f.name()), tau.into(), tol, worst);
        }
    }

    let n = p.order(50);
    let order = Rat::from_integer(n);
    s.push(exact_check(
        "phi Hecke identity on r^2+2rs+s^2",
        n,
        verify_choi_identity_with_form(MockTheta::Phi, (1, 2, 1), order),
    ));
    for c in [2, 4, 6] {
        s.push(exact_check(&format!("F1 component {c} row as printed"), n, verify_f1_printed_row(c, order)));
    }
    let n = p.order(200);
    match verify_theta_split_perturbed(Rat::from_integer(n)) {
        Ok([a, b]) => {
            s.push(exact_check("theta3 split with -theta2", n, Ok(a)));
            s.push(exact_check("theta4 split with -theta2", n, Ok(b)));
        }
        Err(e) => s.push(exact_check("theta split with -theta2", n, Err(e))),
    }
}
