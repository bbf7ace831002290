//! Characteristic polynomials of monodromy written as formal products of
//! `(t^M - 1)^e`, with the pole to eigenvalue check used for the
//! monodromy conjecture.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rat::Rat;
use crate::resolution::YomdinParams;

/// Largest degree for which [`CyclotomicProduct::expand`] is offered.
pub const EXPAND_LIMIT: i64 = 200;

/// `prod (t^M - 1)^{e_M}`; zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclotomicProduct(BTreeMap<u64, i64>);

impl CyclotomicProduct {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiply by `(t^m - 1)^e`, merging with an existing factor.
    pub fn push(&mut self, m: u64, e: i64) {
        assert!(m >= 1, "t^0 - 1 is not a valid factor");
        let slot = self.0.entry(m).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&m);
        }
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.0
    }

    /// `sum M e_M`
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(&m, &e)| m as i64 * e).sum()
    }

    /// Multiplicity of the cyclotomic polynomial `Phi_o`: `sum_{o | M} e_M`.
    pub fn phi_multiplicity(&self, o: u64) -> i64 {
        assert!(o >= 1);
        self.0.iter().filter(|(&m, _)| m % o == 0).map(|(_, &e)| e).sum()
    }

    /// Every `Phi_o` with `o` dividing some stored `M`, with its multiplicity.
    pub fn phi_multiplicities(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        for &m in self.0.keys() {
            for o in (1..=m).filter(|o| m % o == 0) {
                out.entry(o).or_insert_with(|| self.phi_multiplicity(o));
            }
        }
        out
    }

    /// A genuine polynomial: no cyclotomic factor appears with negative multiplicity.
    pub fn is_polynomial(&self) -> bool {
        self.phi_multiplicities().values().all(|&e| e >= 0)
    }

    /// `exp(2 pi i s0)` has order the reduced denominator of `s0`; it is an
    /// eigenvalue when `Phi_order` divides the product.
    pub fn is_eigenvalue_pole(&self, s0: &Rat) -> bool {
        let Some(o) = s0.denom().to_u64() else { return false };
        self.phi_multiplicity(o) > 0
    }

    /// Integer coefficients, lowest degree first, when the product is a
    /// polynomial of degree at most [`EXPAND_LIMIT`].
    pub fn expand(&self) -> Option<Vec<BigInt>> {
        let deg = self.degree();
        if !(0..=EXPAND_LIMIT).contains(&deg) || !self.is_polynomial() {
            return None;
        }
        // Truncated power series modulo t^{deg+1}; exact since the result is a polynomial.
        let n = deg as usize + 1;
        let mut c = vec![BigInt::zero(); n];
        c[0] = BigInt::from(1);
        for (&m, &e) in &self.0 {
            let m = m as usize;
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    for i in (0..n).rev() {
                        let below = if i >= m { c[i - m].clone() } else { BigInt::zero() };
                        c[i] = below - &c[i];
                    }
                } else {
                    // b = (t^M - 1) c gives c_i = c_{i-M} - b_i, solved upward.
                    for i in 0..n {
                        let below = if i >= m { c[i - m].clone() } else { BigInt::zero() };
                        c[i] = below - &c[i];
                    }
                }
            }
        }
        Some(c)
    }

    pub fn render_expanded(&self) -> Option<String> {
        let c = self.expand()?;
        let mut out = String::new();
        for (i, x) in c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            let body = match (i, mag == BigInt::from(1)) {
                (0, _) => mag.to_string(),
                (_, true) => var,
                _ => format!("{mag}*{var}"),
            };
            if out.is_empty() {
                if x.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if x.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        Some(if out.is_empty() { "0".into() } else { out })
    }
}

impl fmt::Display for CyclotomicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, e)| {
                let base = if *m == 1 { "(t - 1)".to_string() } else { format!("(t^{m} - 1)") };
                if *e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// `chi(P^2 \ C_0) = m^2 - 3m + 3 - (p - 1)(q - 1)`
pub fn chi_complement(y: &YomdinParams) -> i64 {
    y.m * y.m - 3 * y.m + 3 - (y.p - 1) * (y.q - 1)
}

/// Characteristic polynomial of the monodromy of `f_m + l^{m+k}` from its
/// weighted resolution.
pub fn yomdin_charpoly(y: &YomdinParams) -> CyclotomicProduct {
    let mk = (y.m + y.k) as u64;
    let mut c = CyclotomicProduct::new();
    c.push(y.m as u64, chi_complement(y));
    c.push(1, -1);
    c.push(mk, 1);
    c.push(y.m1 as u64, y.k1 * y.k2);
    c.push(y.p as u64 * mk / y.k1 as u64, -y.k1);
    c.push(y.q as u64 * mk / y.k2 as u64, -y.k2);
    c
}

/// `(m - 1)^3 + k (p - 1)(q - 1)`
pub fn yomdin_milnor(y: &YomdinParams) -> i64 {
    (y.m - 1).pow(3) + y.k * (y.p - 1) * (y.q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn cp(pairs: &[(u64, i64)]) -> CyclotomicProduct {
        let mut c = CyclotomicProduct::new();
        for &(m, e) in pairs {
            c.push(m, e);
        }
        c
    }

    #[test]
    fn basic_degree_and_multiplicity() {
        assert_eq!(cp(&[(2, 1)]).degree(), 2);
        assert_eq!(cp(&[(2, 1), (1, -1)]).degree(), 1);
        assert_eq!(cp(&[(6, 1)]).phi_multiplicity(3), 1);
        assert_eq!(cp(&[(6, 1), (3, -1)]).phi_multiplicity(3), 0);
        assert_eq!(cp(&[(6, 1)]).phi_multiplicity(4), 0);
        assert!(cp(&[(1, 1)]).is_eigenvalue_pole(&int(-2)));
        assert!(cp(&[(3, 1), (3, -1)]).exponents().is_empty());
    }

    #[test]
    fn yomdin_example() {
        let y = YomdinParams::new(3, 1, 2, 3, 1).unwrap();
        let c = yomdin_charpoly(&y);
        assert_eq!(c, cp(&[(3, 1), (1, -1), (4, 1), (24, 1), (8, -1), (12, -1)]));
        assert_eq!(c.degree(), yomdin_milnor(&y));
        let y = YomdinParams::new(2, 1, 2, 3, 1).unwrap();
        assert_eq!(yomdin_charpoly(&y).degree(), 3);
        let y = YomdinParams::new(3, 1, 2, 3, 2).unwrap();
        assert!(yomdin_charpoly(&y).is_eigenvalue_pole(&rat(-4, 3)));
    }

    #[test]
    fn expansion() {
        let c = cp(&[(2, 1), (1, -1)]);
        assert_eq!(c.render_expanded().unwrap(), "t + 1");
        let c = cp(&[(6, 1), (3, -1), (2, -1), (1, 1)]);
        assert_eq!(c.render_expanded().unwrap(), "t^2 - t + 1");
        assert_eq!(c.to_string(), "(t - 1) * (t^2 - 1)^-1 * (t^3 - 1)^-1 * (t^6 - 1)");
        assert_eq!(cp(&[(1, -1)]).expand(), None);
    }

    #[test]
    fn divisor_bookkeeping() {
        // t^M - 1 = prod_{j | M} Phi_j, so the Phi degrees sum to M.
        fn totient(n: u64) -> u64 {
            (1..=n).filter(|k| num_integer::Integer::gcd(k, &n) == 1).count() as u64
        }
        for m in 1..=100u64 {
            let c = cp(&[(m, 1)]);
            let total: u64 = c.phi_multiplicities().iter().map(|(o, e)| totient(*o) * *e as u64).sum();
            assert_eq!(total, m);
            assert_eq!(c.expand().map(|v| v.len() as u64 - 1), Some(m));
        }
    }
}
