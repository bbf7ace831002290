//! Hirzebruch-Jung resolution of `1/d (a, b)`.

use num_integer::Integer;

use super::gorenstein_index;
use crate::error::{Error, Result};
use crate::groups::GroupAction;
use crate::rat::{int, Rat};
use crate::symring::MotPoly;
use crate::zetacore::{Stratification, Stratum};

/// Chain of exceptional curves `E_1, ..., E_r` with self-intersections `-kappa_i`.
/// `coeffs[i - 1] = c_i` gives `N(E_i) = (c_i . (N1, N2)) / d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain2D {
    pub d: u64,
    pub a: i64,
    pub b: i64,
    /// Normal form `1/d (1, e)` with `e = a^-1 b mod d`.
    pub e: u64,
    pub kappa: Vec<u64>,
    pub coeffs: Vec<(u64, u64)>,
}

impl Chain2D {
    /// `c_0, ..., c_{r+1}` including the strict transforms at both ends.
    pub fn full_coeffs(&self) -> Vec<(u64, u64)> {
        let mut out = vec![(0, self.d)];
        out.extend(self.coeffs.iter().copied());
        out.push((self.d, 0));
        out
    }
}

fn inverse_mod(a: i64, d: i64) -> Option<i64> {
    let g = a.extended_gcd(&d);
    (g.gcd == 1).then(|| g.x.rem_euclid(d))
}

pub fn hj_resolve(d: u64, a: i64, b: i64) -> Result<Chain2D> {
    if d == 0 {
        return Err(Error::BadParams("d must be positive".into()));
    }
    if d == 1 {
        return Ok(Chain2D { d, a, b, e: 0, kappa: Vec::new(), coeffs: Vec::new() });
    }
    let di = d as i64;
    let ainv = inverse_mod(a.rem_euclid(di), di).ok_or(Error::NotCoprime { d: di, x: a })?;
    if b.gcd(&di) != 1 {
        return Err(Error::NotCoprime { d: di, x: b });
    }
    let e = (ainv * b.rem_euclid(di)).rem_euclid(di) as u64;
    let mut kappa = Vec::new();
    let (mut num, mut den) = (d, e);
    while den != 0 {
        let k = num.div_ceil(den);
        kappa.push(k);
        (num, den) = (den, k * den - num);
    }
    let mut c: Vec<(i64, i64)> = vec![(0, di), (1, e as i64)];
    for (i, &k) in kappa.iter().enumerate() {
        let (x1, y1) = c[i + 1];
        let (x0, y0) = c[i];
        c.push((k as i64 * x1 - x0, k as i64 * y1 - y0));
    }
    assert_eq!(c[kappa.len() + 1], (di, 0), "chain must end at (d, 0)");
    let coeffs = c[1..=kappa.len()]
        .iter()
        .map(|&(x, y)| {
            assert!(x > 0 && y > 0, "interior coefficients are positive");
            (x as u64, y as u64)
        })
        .collect();
    Ok(Chain2D { d, a, b, e, kappa, coeffs })
}

/// Strata of the exceptional fibre: each `E_i` minus its two special points
/// (class `L - 1`) and each intersection point `E_i . E_{i+1}` for `i = 0..r`,
/// where `E_0` and `E_{r+1}` are the strict transforms of the axes.
pub fn hj_stratification(c: &Chain2D, n1: &Rat, n2: &Rat, nu1: &Rat, nu2: &Rat) -> Result<Stratification> {
    let n = [n1.clone(), n2.clone()];
    let nu = [nu1.clone(), nu2.clone()];
    if c.kappa.is_empty() {
        let st = Stratum::new(MotPoly::one(), n.to_vec(), nu.to_vec(), GroupAction::trivial(2));
        let r = gorenstein_index(std::slice::from_ref(&st));
        return Stratification::new(2, r, vec![st]);
    }
    let d = int(c.d as i64);
    let dot = |ci: (u64, u64), v: &[Rat; 2]| (int(ci.0 as i64) * &v[0] + int(ci.1 as i64) * &v[1]) / &d;
    let full = c.full_coeffs();
    let lm1 = &MotPoly::l() - &MotPoly::one();
    let mut strata = Vec::new();
    for ci in &c.coeffs {
        strata.push(Stratum::new(
            lm1.clone(),
            vec![dot(*ci, &n), Rat::from_integer(0.into())],
            vec![dot(*ci, &nu), int(1)],
            GroupAction::trivial(2),
        ));
    }
    for w in full.windows(2) {
        strata.push(Stratum::new(
            MotPoly::one(),
            vec![dot(w[0], &n), dot(w[1], &n)],
            vec![dot(w[0], &nu), dot(w[1], &nu)],
            GroupAction::trivial(2),
        ));
    }
    let r = gorenstein_index(&strata).lcm(&c.d);
    Stratification::new(2, r, strata)
}
