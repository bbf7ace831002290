//! Strata of the weighted blow-up resolving the Yomdin-type surface
//! `f = f_m + l^{m+k}`, with `D_2 = (a - 1) L` for a generic linear form `L`.

use num_integer::Integer;

use super::{gorenstein_index, Generated};
use crate::error::{Error, Result};
use crate::groups::GroupAction;
use crate::rat::{int, rat, Rat};
use crate::symring::{ChiEnv, Monomial, MotPoly, StdFactor, TopZeta, ZetaExpr};
use crate::zetacore::{stratified_zeta, SmallPolicy, Stratification, Stratum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YomdinParams {
    pub m: i64,
    pub k: i64,
    pub p: i64,
    pub q: i64,
    pub a: i64,
    /// `gcd(k, p)`
    pub k1: i64,
    /// `gcd(k, q)`
    pub k2: i64,
    /// `pq (m + k) / (k1 k2)`
    pub m1: i64,
    /// `(kp + kq + pq (a + 2)) / (k1 k2)`
    pub nu1: i64,
}

impl YomdinParams {
    pub fn new(m: i64, k: i64, p: i64, q: i64, a: i64) -> Result<Self> {
        if m < 2 || k < 1 || p < 2 || q < 2 || a < 1 {
            return Err(Error::BadParams(format!(
                "need m >= 2, k >= 1, p, q >= 2, a >= 1; got m={m} k={k} p={p} q={q} a={a}"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { d: p, x: q });
        }
        let k1 = k.gcd(&p);
        let k2 = k.gcd(&q);
        let m1 = p * q * (m + k) / (k1 * k2);
        let nu1 = (k * p + k * q + p * q * (a + 2)) / (k1 * k2);
        Ok(YomdinParams { m, k, p, q, a, k1, k2, m1, nu1 })
    }

    /// `chi(C_0) = -m^2 + 3m + (p - 1)(q - 1)`
    pub fn chi_c0(&self) -> i64 {
        -self.m * self.m + 3 * self.m + (self.p - 1) * (self.q - 1)
    }

    /// `chi(C_1) = k1 + k2 + 1 - k1 k2`
    pub fn chi_c1(&self) -> i64 {
        self.k1 + self.k2 + 1 - self.k1 * self.k2
    }

    pub fn chi_env(&self) -> ChiEnv {
        ChiEnv::from([("C0".to_string(), self.chi_c0()), ("C1".to_string(), self.chi_c1())])
    }

    /// The two candidate poles `-(a + 2)/m` and `-nu1/m1`.
    pub fn listed_poles(&self) -> [Rat; 2] {
        [rat(-(self.a + 2), self.m), rat(-self.nu1, self.m1)]
    }

    fn weights(&self) -> (i64, i64, i64) {
        let kk = self.k1 * self.k2;
        (self.k * self.p / kk, self.k * self.q / kk, self.p * self.q / kk)
    }
}

struct Row {
    klass: MotPoly,
    n: [i64; 3],
    nu: [i64; 3],
    group: (i64, [i64; 3]),
}

fn c(x: i64) -> MotPoly {
    MotPoly::constant(x)
}

fn sym(name: &str) -> MotPoly {
    MotPoly::symbol(name)
}

fn rows(y: &YomdinParams) -> Vec<Row> {
    let YomdinParams { m, k, p, q, a, k1, k2, m1, nu1, .. } = *y;
    let (w1, w2, w3) = y.weights();
    let kk = k1 * k2;
    let l = MotPoly::l();
    let l2 = MotPoly::l_pow(int(2));
    let triv = (1, [0, 0, 0]);
    let row = |klass: MotPoly, n: [i64; 3], nu: [i64; 3], group: (i64, [i64; 3])| Row { klass, n, nu, group };
    vec![
        row(&(&l2 - &sym("C0")) + &c(m), [0, 0, m], [1, 1, a + 2], triv),
        row(&sym("C0") - &c(m + 1), [1, 0, m], [1, 1, a + 2], triv),
        row(&l + &c(1 - m), [0, 0, m], [1, a, a + 2], triv),
        row(c(m), [1, 0, m], [1, a, a + 2], triv),
        row(
            &(&(&l2 - &l.scale(&2.into())) - &sym("C1")) + &c(k1 + k2 + 2),
            [0, m1, 0],
            [1, nu1, 1],
            triv,
        ),
        row(&sym("C1") - &c(k1 + k2 + 1), [1, m1, 0], [1, nu1, 1], triv),
        row(&l - &c(k1 + 1), [0, m1, 0], [1, nu1, 1], (q / k2, [w1, -1, 0])),
        row(&l - &c(k2 + 1), [m1, 0, 0], [nu1, 1, 1], (p / k1, [-1, w2, 0])),
        row(&l - &c(2), [0, m1, m], [1, nu1, a + 2], (k / kk, [0, -1, w3])),
        row(c(k1), [1, m1, 0], [1, nu1, 1], (q / k2, [w1, -1, 0])),
        row(c(k2), [m1, 1, 0], [nu1, 1, 1], (p / k1, [-1, w2, 0])),
        row(c(1), [1, m1, m], [1, nu1, a + 2], (k / kk, [0, -1, w3])),
        row(c(1), [0, 0, m1], [1, 1, nu1], (p * q / kk, [w1, w2, -1])),
        row(c(1), [0, m1, m], [1, nu1, a + 2], (k * q / kk, [w1, -1, w3])),
        row(c(1), [m1, 0, m], [nu1, 1, a + 2], (k * p / kk, [-1, w2, w3])),
    ]
}

fn ints(v: [i64; 3]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

/// The fifteen strata `Y_0, ..., Y_14` of the exceptional divisors `E_0` and `E_1`.
pub fn yomdin_stratification(y: &YomdinParams) -> Result<Generated> {
    let strata: Vec<Stratum> = rows(y)
        .into_iter()
        .map(|r| {
            let g = GroupAction::cyclic(r.group.0 as u64, r.group.1.to_vec())?;
            Ok(Stratum::new(r.klass, ints(r.n), ints(r.nu), g))
        })
        .collect::<Result<_>>()?;
    let r = gorenstein_index(&strata);
    Ok(Generated { strata: Stratification::new(3, r, strata)?, chi: y.chi_env(), notices: Vec::new() })
}

pub fn yomdin_zeta(y: &YomdinParams) -> Result<ZetaExpr> {
    stratified_zeta(&yomdin_stratification(y)?.strata, SmallPolicy::Require)
}

pub fn yomdin_top(y: &YomdinParams) -> Result<TopZeta> {
    yomdin_zeta(y)?.euler(&y.chi_env())
}

/// `S_G` for a cyclic group `(d; a, b, c)` summed directly over `i = 0..d-1`.
pub(crate) fn s_g_cyclic(d: i64, a: [i64; 3], n: [Rat; 3], nu: [Rat; 3]) -> MotPoly {
    let mut out = MotPoly::zero();
    let dd = int(d);
    for i in 0..d {
        let bars: Vec<Rat> = a.iter().map(|&aj| int((i * aj).rem_euclid(d))).collect();
        let s_coeff: Rat = bars.iter().zip(&n).map(|(b, x)| b * x).sum::<Rat>() / &dd;
        let const_part: Rat = bars.iter().zip(&nu).map(|(b, x)| b * x).sum::<Rat>() / &dd;
        out = &out + &MotPoly::monomial(1, Monomial::lt(const_part, -s_coeff));
    }
    out
}

fn fac(n: i64, nu: i64) -> StdFactor {
    StdFactor::new(int(n), int(nu)).expect("positive data")
}

/// The zeta function assembled term by term from the printed contributions of
/// `E_0` and `E_1`, with every `S_G` evaluated by the cyclic sum formula.
pub fn yomdin_zeta_printed(y: &YomdinParams) -> ZetaExpr {
    let YomdinParams { m, k, p, q, a, k1, k2, m1, nu1, .. } = *y;
    let (w1, w2, w3) = y.weights();
    let kk = k1 * k2;
    let l = MotPoly::l();
    let l2 = MotPoly::l_pow(int(2));
    let l_minus3 = MotPoly::l_pow(int(-3));
    let f_s1 = fac(1, 1);
    let f_m = fac(m, a + 2);
    let f_a = fac(0, a);
    let f_e1 = fac(m1, nu1);
    let term = |coeff: MotPoly, fs: Vec<StdFactor>| ZetaExpr::term(coeff, fs);

    let inner0 = &(&(&term(&(&l2 - &sym("C0")) + &c(m), vec![])
        + &term(&sym("C0") - &c(m + 1), vec![f_s1.clone()]))
        + &term(&l + &c(1 - m), vec![f_a.clone()]))
        + &term(c(m), vec![f_s1.clone(), f_a.clone()]);
    let e0 = (&inner0 * &ZetaExpr::factor(f_m.clone())).scale(&l_minus3);

    let sg = |d: i64, row: [i64; 3], n: [i64; 3], nu: [i64; 3]| {
        s_g_cyclic(d, row, n.map(int), nu.map(int))
    };
    let s6 = sg(q / k2, [w1, -1, 0], [0, m1, 0], [1, nu1, 1]);
    let s7 = sg(p / k1, [-1, w2, 0], [m1, 0, 0], [nu1, 1, 1]);
    let s8 = sg(k / kk, [0, -1, w3], [0, m1, m], [1, nu1, a + 2]);
    let s9 = sg(q / k2, [w1, -1, 0], [1, m1, 0], [1, nu1, 1]);
    let s10 = sg(p / k1, [-1, w2, 0], [m1, 1, 0], [nu1, 1, 1]);
    let s11 = sg(k / kk, [0, -1, w3], [1, m1, m], [1, nu1, a + 2]);
    let s12 = sg(p * q / kk, [w1, w2, -1], [0, 0, m1], [1, 1, nu1]);
    let s13 = sg(k * q / kk, [w1, -1, w3], [0, m1, m], [1, nu1, a + 2]);
    let s14 = sg(k * p / kk, [-1, w2, w3], [m1, 0, m], [nu1, 1, a + 2]);

    let plain = &(&(&(&(&l2 - &l.scale(&2.into())) - &sym("C1")) + &c(k1 + k2 + 2))
        + &(&(&l - &c(k1 + 1)) * &s6))
        + &(&(&(&l - &c(k2 + 1)) * &s7) + &s12);
    let with_s1 = &(&(&sym("C1") - &c(k1 + k2 + 1)) + &s9.scale(&k1.into())) + &s10.scale(&k2.into());
    let with_m = &(&(&(&l - &c(2)) * &s8) + &s13) + &s14;
    let z = &(&(&term(plain, vec![]) + &term(with_s1, vec![f_s1.clone()])) + &term(with_m, vec![f_m.clone()]))
        + &term(s11, vec![f_s1, f_m]);
    let e1 = (&z * &ZetaExpr::factor(f_e1)).scale(&l_minus3);
    &e0 + &e1
}

/// The displayed topological zeta function: the specialized `E_0` and `E_1` contributions.
pub fn yomdin_top_closed_form(y: &YomdinParams) -> TopZeta {
    let YomdinParams { m, k, p, q, a, k1, k2, m1, nu1, .. } = *y;
    let chi0 = int(y.chi_c0());
    let r = |x: i64| int(x);
    let s1 = (r(1), r(1));
    let fm = (r(m), r(a + 2));
    let fa = (r(0), r(a));
    let f1 = (r(m1), r(nu1));
    let kk = r(k1 * k2);
    let k1r = r(k1);
    let k2r = r(k2);
    let q_k2 = rat(q, k2);
    let p_k1 = rat(p, k1);
    let first = &kk - &k1r * &q_k2 - &k2r * &p_k1 + rat(p * q, k1 * k2);
    let second = -&kk + &k1r * &q_k2 + &k2r * &p_k1;
    let third = rat(-k, k1 * k2) + rat(k * q, k1 * k2) + rat(k * p, k1 * k2);
    let fourth = rat(k, k1 * k2);
    TopZeta::from_terms(vec![
        (r(1) - &chi0 + r(m), vec![fm.clone()]),
        (&chi0 - r(m) - r(1), vec![s1.clone(), fm.clone()]),
        (r(2 - m), vec![fa.clone(), fm.clone()]),
        (r(m), vec![s1.clone(), fa, fm.clone()]),
        (first, vec![f1.clone()]),
        (second, vec![s1.clone(), f1.clone()]),
        (third, vec![fm.clone(), f1.clone()]),
        (fourth, vec![s1, fm, f1]),
    ])
}
