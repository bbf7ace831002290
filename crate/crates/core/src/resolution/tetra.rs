//! Strata of the blow-up at the origin of `C^3 / G_{d,q}`, for the divisors
//! `D_1 = (xyz)^N` and `D_2 = (xyz)^{nu - 1}`.

use super::yomdin::s_g_cyclic;
use super::{gorenstein_index, Generated};
use crate::error::Result;
use crate::groups::GroupAction;
use crate::rat::{int, Rat};
use crate::symring::{ChiEnv, Monomial, MotPoly, StdFactor, TopZeta, ZetaExpr};
use crate::tetra::TetraParams;
use crate::zetacore::{Stratification, Stratum};

fn small_params(t: &TetraParams, notices: &mut Vec<String>) -> TetraParams {
    if t.is_small() {
        return *t;
    }
    let r = t.reduced();
    notices.push(format!(
        "G_{{{},{}}} is not small; using G_{{{},{}}} with d' = gcd(d, q^3 + 1) = {}",
        t.d, t.q, r.d, r.q, r.d
    ));
    r
}

/// `(3; k beta, 1, 2)` when `3` does not divide `d`, else `(3; -k (q+1) gamma / alpha, 1, 2)`.
fn q_group(t: &TetraParams, k: i64) -> Result<GroupAction> {
    let first = if !t.d.is_multiple_of(3) {
        k * t.beta as i64
    } else {
        let gamma = t.gamma().expect("small") as i64;
        -k * ((t.q + 1) / t.alpha) as i64 * gamma
    };
    GroupAction::cyclic(3, vec![first, 1, 2])
}

/// The six strata `Y_0, ..., Y_5` of the exceptional divisor `E = P^2 / G`.
/// Non-small parameters are replaced by `G_{d', q}` with a notice.
pub fn tetra_stratification(t: &TetraParams, n: &Rat, nu: &Rat) -> Result<Generated> {
    let mut notices = Vec::new();
    let t = small_params(t, &mut notices);
    let d = t.d as i64;
    let beta = t.beta as i64;
    let q = t.q as i64;
    let h = (q * q - q + 1) / beta;
    let nn = int(3) * n / int(beta);
    let nnu = int(3) * nu / int(beta);
    let zero = Rat::from_integer(0.into());
    let one = int(1);
    let e = MotPoly::symbol("E");
    let dd = MotPoly::symbol("D");
    let mut strata = vec![
        Stratum::new(
            &(&e - &dd) - &MotPoly::constant(3),
            vec![nn.clone(), zero.clone(), zero.clone()],
            vec![nnu.clone(), one.clone(), one.clone()],
            GroupAction::trivial(3),
        ),
        Stratum::new(
            &dd - &MotPoly::one(),
            vec![nn.clone(), zero.clone(), n.clone()],
            vec![nnu.clone(), one.clone(), nu.clone()],
            GroupAction::cyclic((d / beta) as u64, vec![q, 0, h])?,
        ),
        Stratum::new(
            MotPoly::one(),
            vec![nn.clone(), n.clone(), n.clone()],
            vec![nnu.clone(), nu.clone(), nu.clone()],
            GroupAction::new(vec![d as u64, (d / beta) as u64], vec![vec![0, 1, q], vec![q, 0, h]])?,
        ),
    ];
    for k in 0..3 {
        strata.push(Stratum::new(
            MotPoly::one(),
            vec![nn.clone(), zero.clone(), zero.clone()],
            vec![nnu.clone(), one.clone(), one.clone()],
            q_group(&t, k)?,
        ));
    }
    let r = gorenstein_index(&strata);
    let chi = ChiEnv::from([("E".to_string(), 3), ("D".to_string(), 1)]);
    Ok(Generated { strata: Stratification::new(3, r, strata)?, chi, notices })
}

/// `S_{G_2}` as the double sum over `i < d`, `j < d / beta` of the diagonal
/// matrices `diag(xi^{j beta q}, xi^i, xi^{iq + j(q^2 - q + 1)})`.
pub fn tetra_s_g2_printed(t: &TetraParams, n: &Rat, nu: &Rat) -> MotPoly {
    let d = t.d as i64;
    let beta = t.beta as i64;
    let q = t.q as i64;
    let mut out = MotPoly::zero();
    for i in 0..d {
        for j in 0..d / beta {
            let w = int(3) / int(beta) * int((j * beta * q).rem_euclid(d))
                + int(i)
                + int((i * q + j * (q * q - q + 1)).rem_euclid(d));
            let w = w / int(d);
            out = &out + &MotPoly::monomial(1, Monomial::lt(&w * nu, -(&w * n)));
        }
    }
    out
}

/// The zeta function in its printed form: one factor for `E` times a sum over
/// the strata, with cyclic `S_G` sums and the double sum for `S_{G_2}`.
pub fn tetra_zeta_printed(t: &TetraParams, n: &Rat, nu: &Rat) -> Result<ZetaExpr> {
    let mut notices = Vec::new();
    let t = small_params(t, &mut notices);
    let beta = t.beta as i64;
    let q = t.q as i64;
    let d = t.d as i64;
    let h = (q * q - q + 1) / beta;
    let nn = int(3) * n / int(beta);
    let nnu = int(3) * nu / int(beta);
    let zero = Rat::from_integer(0.into());
    let one = int(1);
    let f_e = StdFactor::new(nn.clone(), nnu.clone())?;
    let f = StdFactor::new(n.clone(), nu.clone())?;
    let mut plain = &(&MotPoly::symbol("E") - &MotPoly::symbol("D")) - &MotPoly::constant(3);
    for k in 0..3 {
        let first = if d % 3 != 0 {
            k * beta
        } else {
            -k * (q + 1) / t.alpha as i64 * t.gamma().expect("small") as i64
        };
        let s = s_g_cyclic(
            3,
            [first, 1, 2],
            [nn.clone(), zero.clone(), zero.clone()],
            [nnu.clone(), one.clone(), one.clone()],
        );
        plain = &plain + &s;
    }
    let s1 = s_g_cyclic(
        d / beta,
        [q, 0, h],
        [nn.clone(), zero.clone(), n.clone()],
        [nnu.clone(), one.clone(), nu.clone()],
    );
    let s2 = tetra_s_g2_printed(&t, n, nu);
    let inner = &ZetaExpr::from_poly(plain)
        + &(&ZetaExpr::factor(f.clone())
            * &(&ZetaExpr::from_poly(&(&MotPoly::symbol("D") - &MotPoly::one()) * &s1)
                + &ZetaExpr::term(s2, vec![f.clone()])));
    Ok((&inner * &ZetaExpr::factor(f_e)).scale(&MotPoly::l_pow(int(-3))))
}

/// `(d^2 + 8 beta (N s + nu)^2) / (3 (N s + nu)^3)` for the small parameters.
pub fn tetra_top_closed_form(t: &TetraParams, n: &Rat, nu: &Rat) -> TopZeta {
    let mut notices = Vec::new();
    let t = small_params(t, &mut notices);
    let f = (n.clone(), nu.clone());
    let d2 = int((t.d * t.d) as i64);
    TopZeta::from_terms(vec![
        (d2 / int(3), vec![f.clone(), f.clone(), f.clone()]),
        (int(8 * t.beta as i64) / int(3), vec![f]),
    ])
}
