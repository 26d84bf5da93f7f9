//! Indefinite and unary theta series: shift laws, the cone decomposition,
//! modular transformations and the integral representation of `R`.

use mocktheta_core::special::{cis_turns, Rat};
use mocktheta_core::zwegers::{
    bilinear, g_s_sides, g_t_sides, g_unary, r_s_sides, r_t_sides, r_unary, r_via_integral,
    remainder_term, rescaling_sides, sgn_sum_converged, vartheta, vartheta_s_sides,
    vartheta_sine_sides, vartheta_t_sides, IndefLattice, ThetaChar, UnaryChar,
};
use mocktheta_core::{Complex64, Result as CoreResult};
use num_traits::ToPrimitive;

use super::{eval_tol, scaled, Params, Suite};
use crate::report::Point;

const L: IndefLattice = IndefLattice::TENTH;

fn pair(r: CoreResult<(Complex64, Complex64)>) -> CoreResult<f64> {
    r.map(|(a, b)| scaled(a, b))
}

fn unary_chars() -> [UnaryChar; 4] {
    let r = Rat::new;
    [
        UnaryChar::new(r(1, 20), r(0, 1)),
        UnaryChar::new(r(9, 20), r(1, 2)),
        UnaryChar::new(r(3, 10), r(1, 5)),
        UnaryChar::new(r(7, 20), r(1, 4)),
    ]
}

pub(crate) fn zwegers_internal(s: &mut Suite, p: &Params) {
    let tol = p.tol(1e-8);
    let et = eval_tol(tol);
    for (idx, tau) in p.taus().into_iter().enumerate() {
        let pt = Point::from(tau);
        let v = 1 + (idx % 4) as i64;
        let k = ((idx / 4) % 2) as i64;
        let w = (idx % 3) as i64;
        let ch = ThetaChar::tenth(v, k, w);
        let tag = format!("p{idx:02} a=({v}/10)e+({k}/2)ex b=({w}/20)e");
        let th = |c: &ThetaChar, t: Complex64| vartheta(&L, c, t, et).map(|e| e.value);

        let shifted = ThetaChar { a: [ch.a[0] + 3, ch.a[1] - 2], b: ch.b };
        s.check(format!("{tag} a-shift"), pt, tol, (|| Ok(scaled(th(&shifted, tau)?, th(&ch, tau)?)))());

        let mu = L.solve(&[Rat::from_integer(1), Rat::from_integer(0)]);
        let twisted = ThetaChar { a: ch.a, b: [ch.b[0] + mu[0], ch.b[1] + mu[1]] };
        let phase = cis_turns(bilinear(&L, &ch.a, &mu).to_f64().unwrap_or(0.0));
        s.check(format!("{tag} b-shift"), pt, tol, (|| Ok(scaled(th(&twisted, tau)?, phase * th(&ch, tau)?)))());

        let odd = ThetaChar { a: [-ch.a[0], -ch.a[1]], b: [-ch.b[0], -ch.b[1]] };
        s.check(format!("{tag} oddness"), pt, tol, (|| Ok(scaled(th(&odd, tau)?, -th(&ch, tau)?)))());

        s.check(
            format!("{tag} decomposition"),
            pt,
            tol,
            (|| {
                let sharp = sgn_sum_converged(&L, &ch, tau, et)?.value;
                Ok(scaled(sharp, th(&ch, tau)? - remainder_term(&L, &ch, tau, et)?))
            })(),
        );
        s.check(format!("{tag} S-transform"), pt, tol, pair(vartheta_s_sides(&ch, tau, et)));
        s.check(format!("{tag} T-transform"), pt, tol, pair(vartheta_t_sides(&L, &ch, tau, et)));
        s.check(format!("{tag} sine form"), pt, tol, pair(vartheta_sine_sides(v, k, tau, et)));

        let u = unary_chars()[idx % 4];
        let utag = format!("p{idx:02} (s,t)=({},{})", u.s, u.t);
        s.check(format!("{utag} g S-law"), pt, tol, pair(g_s_sides(&u, tau, et)));
        s.check(format!("{utag} g T-law"), pt, tol, pair(g_t_sides(&u, tau, et)));
        s.check(format!("{utag} R T-law"), pt, tol, pair(r_t_sides(&u, tau, et)));
        s.check(format!("{utag} R under S"), pt, tol, pair(r_s_sides(&u, tau, et)));
        s.check(
            format!("{utag} R integral"),
            pt,
            tol,
            (|| Ok(scaled(r_unary(&u, tau, et)?, r_via_integral(&u, tau, et)?.value)))(),
        );
        s.check(
            format!("{utag} g shifts"),
            pt,
            tol,
            (|| {
                let g = g_unary(&u, tau, et)?;
                let a = scaled(g_unary(&UnaryChar::new(u.s + 1, u.t), tau, et)?, g);
                let b = scaled(g_unary(&UnaryChar::new(-u.s, -u.t), tau, et)?, -g);
                Ok(a.max(b))
            })(),
        );
        s.check(
            format!("{utag} R t-shift"),
            pt,
            tol,
            (|| {
                let r = r_unary(&u, tau, et)?;
                let phase = cis_turns(-u.s.to_f64().unwrap_or(0.0));
                Ok(scaled(r_unary(&UnaryChar::new(u.s, u.t + 1), tau, et)?, phase * r))
            })(),
        );
        let ru = 1 + (idx % 9) as i64;
        s.check(format!("p{idx:02} rescaling u={ru}"), pt, tol, pair(rescaling_sides(ru, tau, et)));
    }
}
