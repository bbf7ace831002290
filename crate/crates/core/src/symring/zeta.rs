//! Sums of `MotPoly` coefficients times products of standard factors
//! `F(N, nu) = (L - 1) L^-(Ns + nu) / (1 - L^-(Ns + nu))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::motpoly::{ChiEnv, Monomial, MotPoly};
use super::topzeta::TopZeta;
use crate::error::{Error, Result};
use crate::rat::{fmt_rat, Rat};

/// `F(N, nu)` with `N >= 0`, `nu > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StdFactor {
    pub n: Rat,
    pub nu: Rat,
}

impl StdFactor {
    pub fn new(n: Rat, nu: Rat) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::BadFactor(format!("N = {} is negative", fmt_rat(&n))));
        }
        if !nu.is_positive() {
            return Err(Error::BadFactor(format!("nu = {} is not positive", fmt_rat(&nu))));
        }
        Ok(StdFactor { n, nu })
    }

    /// `F(0, 1) = 1`.
    pub fn is_trivial(&self) -> bool {
        self.n.is_zero() && self.nu.is_one()
    }

    /// The monomial `X = L^-nu T^N`, so that `F = (L - 1) X / (1 - X)`.
    pub fn x(&self) -> Monomial {
        Monomial::lt(-&self.nu, self.n.clone())
    }

    /// `(L - 1) L^-nu T^N`
    pub fn numerator(&self) -> MotPoly {
        (&MotPoly::l() - &MotPoly::one()).mul_monomial(&self.x())
    }

    /// `1 - L^-nu T^N`
    pub fn denominator(&self) -> MotPoly {
        MotPoly::one_minus(&self.x())
    }

    /// Candidate pole `-nu / N`, if the factor depends on `s`.
    pub fn pole(&self) -> Option<Rat> {
        (!self.n.is_zero()).then(|| -(&self.nu / &self.n))
    }

    /// Geometric expansion `(L - 1) sum_{j >= 1} L^(-j nu) T^(j N)` keeping `T` exponents `<= bound`.
    pub fn series(&self, bound: &Rat) -> Result<MotPoly> {
        if self.n.is_zero() {
            return Err(Error::InfiniteSeries { n: fmt_rat(&self.n), nu: fmt_rat(&self.nu) });
        }
        let lm1 = &MotPoly::l() - &MotPoly::one();
        let mut sum = MotPoly::zero();
        let mut j = Rat::one();
        while &(&j * &self.n) <= bound {
            sum = &sum + &MotPoly::monomial(1, Monomial::lt(-(&j * &self.nu), &j * &self.n));
            j += Rat::one();
        }
        Ok(&lm1 * &sum)
    }
}

impl fmt::Display for StdFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fac({}; {})", fmt_rat(&self.n), fmt_rat(&self.nu))
    }
}

/// Canonical sum of `coeff * prod F(N_i, nu_i)`, keyed by the sorted factor multiset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaExpr {
    terms: BTreeMap<Vec<StdFactor>, MotPoly>,
}

/// Multiset of denominator factors `(1 - X)` keyed by `(N, nu)`.
pub type DenomSet = BTreeMap<StdFactor, u32>;

/// `numer / prod (1 - L^-nu T^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub numer: MotPoly,
    pub denom: DenomSet,
}

impl ZetaExpr {
    pub fn zero() -> Self {
        ZetaExpr::default()
    }

    pub fn one() -> Self {
        Self::from_poly(MotPoly::one())
    }

    pub fn from_poly(p: MotPoly) -> Self {
        Self::term(p, Vec::new())
    }

    pub fn factor(f: StdFactor) -> Self {
        Self::term(MotPoly::one(), vec![f])
    }

    pub fn term(coeff: MotPoly, factors: Vec<StdFactor>) -> Self {
        let mut z = ZetaExpr::zero();
        z.add_term(coeff, factors);
        z
    }

    fn add_term(&mut self, coeff: MotPoly, factors: Vec<StdFactor>) {
        if coeff.is_zero() {
            return;
        }
        let mut key: Vec<StdFactor> = factors.into_iter().filter(|f| !f.is_trivial()).collect();
        key.sort();
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[StdFactor], &MotPoly)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, p: &MotPoly) -> ZetaExpr {
        let mut z = ZetaExpr::zero();
        for (k, v) in &self.terms {
            z.add_term(v * p, k.clone());
        }
        z
    }

    /// `{ -nu / N }` over all factors with `N > 0`.
    pub fn candidate_poles(&self) -> BTreeSet<Rat> {
        self.terms.keys().flatten().filter_map(StdFactor::pole).collect()
    }

    /// Distinct symbol names in all coefficients.
    pub fn symbols(&self) -> BTreeSet<String> {
        self.terms.values().flat_map(MotPoly::symbols).collect()
    }

    /// Every rational exponent and factor datum occurring in the expression.
    pub fn rationals(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for (k, v) in &self.terms {
            out.extend(v.exponents().cloned());
            for f in k {
                out.push(f.n.clone());
                out.push(f.nu.clone());
            }
        }
        out
    }

    /// Numerator over the common denominator, before any cancellation.
    pub fn cross_multiply(&self) -> RatFunc {
        let leaves: Vec<RatFunc> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let mut numer = v.clone();
                let mut denom = DenomSet::new();
                for f in k {
                    numer = &numer * &f.numerator();
                    *denom.entry(f.clone()).or_default() += 1;
                }
                RatFunc { numer, denom }
            })
            .collect();
        sum_ratfuncs(leaves)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let mut rf = self.cross_multiply();
        rf.cancel();
        rf
    }

    /// Equality of the cross-multiplied numerators over a common denominator.
    pub fn equal(&self, other: &ZetaExpr) -> bool {
        self == other || (self - other).cross_multiply().numer.is_zero()
    }

    /// Product of factor expansions truncated to `T` exponents `<= m`.
    pub fn series(&self, m: &Rat) -> Result<MotPoly> {
        let mut out = MotPoly::zero();
        for (k, v) in &self.terms {
            let cmin = v.min_t().unwrap_or_default();
            let total: Rat = k.iter().fold(Rat::zero(), |a, f| a + &f.n);
            let mut acc = v.clone();
            for f in k {
                let bound = m - &cmin - (&total - &f.n);
                acc = (&acc * &f.series(&bound)?).truncate_t(m);
            }
            out += &acc.truncate_t(m);
        }
        Ok(out)
    }

    /// Euler characteristic specialization: `L -> 1`, `T -> 1`, `F(N, nu) -> 1/(Ns + nu)`.
    pub fn euler(&self, chi: &ChiEnv) -> Result<TopZeta> {
        let mut terms = Vec::new();
        for (k, v) in &self.terms {
            let c = v.specialize_chi(chi)?;
            terms.push((Rat::from_integer(c), k.iter().map(|f| (f.n.clone(), f.nu.clone())).collect()));
        }
        Ok(TopZeta::from_terms(terms))
    }
}

fn sum_ratfuncs(mut items: Vec<RatFunc>) -> RatFunc {
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.add(&b)),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop().unwrap_or(RatFunc { numer: MotPoly::zero(), denom: DenomSet::new() })
}

impl RatFunc {
    fn add(&self, other: &RatFunc) -> RatFunc {
        let mut denom = self.denom.clone();
        for (f, e) in &other.denom {
            let slot = denom.entry(f.clone()).or_default();
            *slot = (*slot).max(*e);
        }
        let lift = |rf: &RatFunc| {
            let mut n = rf.numer.clone();
            if n.is_zero() {
                return n;
            }
            for (f, e) in &denom {
                let have = rf.denom.get(f).copied().unwrap_or(0);
                for _ in have..*e {
                    n = &n * &f.denominator();
                }
            }
            n
        };
        RatFunc { numer: &lift(self) + &lift(other), denom }
    }

    /// Removes every denominator factor that exactly divides the numerator.
    pub fn cancel(&mut self) {
        if self.numer.is_zero() {
            self.denom.clear();
            return;
        }
        let keys: Vec<StdFactor> = self.denom.keys().cloned().collect();
        for f in keys {
            let x = f.x();
            while self.denom.get(&f).copied().unwrap_or(0) > 0 {
                match self.numer.div_one_minus(&x) {
                    Some(q) => {
                        self.numer = q;
                        let e = self.denom.get_mut(&f).expect("present");
                        *e -= 1;
                        if *e == 0 {
                            self.denom.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_empty() {
            return write!(f, "{}", self.numer.render_factored());
        }
        let den: Vec<String> = self
            .denom
            .iter()
            .map(|(fac, e)| {
                let base = format!("({})", fac.denominator());
                if *e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect();
        write!(f, "({}) / ({})", self.numer, den.join(" * "))
    }
}

impl fmt::Display for ZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if k.is_empty() {
                parts.push(v.render_factored());
            } else if !v.is_one() {
                if v.len() == 1 {
                    parts.push(v.to_string());
                } else {
                    parts.push(format!("({})", v.render_factored()));
                }
            }
            let mut j = 0;
            while j < k.len() {
                let mut e = 1;
                while j + e < k.len() && k[j + e] == k[j] {
                    e += 1;
                }
                parts.push(if e == 1 { k[j].to_string() } else { format!("{}^{e}", k[j]) });
                j += e;
            }
            write!(f, "{}", parts.join(" * "))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a ZetaExpr> for &'a ZetaExpr {
    type Output = ZetaExpr;
    fn add(self, rhs: &ZetaExpr) -> ZetaExpr {
        let mut z = self.clone();
        for (k, v) in &rhs.terms {
            z.add_term(v.clone(), k.clone());
        }
        z
    }
}

impl Add for ZetaExpr {
    type Output = ZetaExpr;
    fn add(self, rhs: ZetaExpr) -> ZetaExpr {
        &self + &rhs
    }
}

impl Neg for &ZetaExpr {
    type Output = ZetaExpr;
    fn neg(self) -> ZetaExpr {
        ZetaExpr { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl<'a> Sub<&'a ZetaExpr> for &'a ZetaExpr {
    type Output = ZetaExpr;
    fn sub(self, rhs: &ZetaExpr) -> ZetaExpr {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ZetaExpr> for &'a ZetaExpr {
    type Output = ZetaExpr;
    fn mul(self, rhs: &ZetaExpr) -> ZetaExpr {
        let mut z = ZetaExpr::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut k = ka.clone();
                k.extend(kb.iter().cloned());
                z.add_term(va * vb, k);
            }
        }
        z
    }
}

impl Mul for ZetaExpr {
    type Output = ZetaExpr;
    fn mul(self, rhs: ZetaExpr) -> ZetaExpr {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn fac(n: i64, nu: i64) -> StdFactor {
        StdFactor::new(int(n), int(nu)).unwrap()
    }

    #[test]
    fn trivial_factor_is_identity() {
        let x = ZetaExpr::factor(fac(2, 3)).scale(&MotPoly::l());
        assert_eq!(&ZetaExpr::factor(fac(0, 1)) * &x, x);
        assert_eq!(ZetaExpr::factor(fac(0, 1)), ZetaExpr::one());
    }

    #[test]
    fn merge_and_multiset() {
        let a = ZetaExpr::factor(fac(1, 1));
        let s = &a + &a;
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_string(), "2 * Fac(1; 1)");
        let p = &a * &ZetaExpr::factor(fac(2, 3));
        assert_eq!(p.to_string(), "Fac(1; 1) * Fac(2; 3)");
        assert_eq!((&a * &a).to_string(), "Fac(1; 1)^2");
    }

    #[test]
    fn ratfunc_of_single_factor() {
        let rf = ZetaExpr::factor(fac(1, 1)).to_ratfunc();
        assert_eq!(rf.numer, fac(1, 1).numerator());
        assert_eq!(rf.denom.len(), 1);
        assert!(ZetaExpr::one().to_ratfunc().denom.is_empty());
    }

    #[test]
    fn equality_cases() {
        let a = ZetaExpr::factor(fac(1, 1));
        assert!(a.equal(&a));
        assert!((&ZetaExpr::factor(fac(0, 1)) * &a).equal(&a));
        // F = (L - 1) X / (1 - X), so F - (L - 1) X = X F
        let f = fac(1, 2);
        let lhs = &ZetaExpr::factor(f.clone()) - &ZetaExpr::from_poly(f.numerator());
        let rhs = ZetaExpr::factor(f.clone()).scale(&MotPoly::monomial(1, f.x()));
        assert!(lhs.equal(&rhs));
        assert!(!a.equal(&ZetaExpr::factor(fac(1, 2))));
    }

    #[test]
    fn cancellation_removes_exact_divisors() {
        let f = fac(1, 1);
        let z = ZetaExpr::factor(f.clone()).scale(&f.denominator());
        let rf = z.to_ratfunc();
        assert!(rf.denom.is_empty());
        assert_eq!(rf.numer, f.numerator());
    }

    #[test]
    fn series_examples() {
        let s = fac(1, 1).series(&int(2)).unwrap();
        let expect = &(&MotPoly::l() - &MotPoly::one())
            * &(&MotPoly::monomial(1, Monomial::lt(int(-1), int(1)))
                + &MotPoly::monomial(1, Monomial::lt(int(-2), int(2))));
        assert_eq!(s, expect);
        assert_eq!(ZetaExpr::one().series(&int(5)).unwrap(), MotPoly::one());
        let z = ZetaExpr::factor(fac(1, 1)).scale(&MotPoly::l_pow(int(-1)));
        let one_minus = &MotPoly::one() - &MotPoly::l_pow(int(-1));
        let expect = (&one_minus * &MotPoly::l_pow(int(-1))).mul_monomial(&Monomial::lt(int(0), int(1)));
        assert_eq!(z.series(&int(1)).unwrap(), expect);
        assert!(fac(0, 2).series(&int(1)).is_err());
    }

    #[test]
    fn series_with_negative_t_in_coefficient() {
        // T^-1 * F(1,1) to order 1 needs the T^2 term of the factor.
        let z = ZetaExpr::factor(fac(1, 1)).scale(&MotPoly::t_pow(int(-1)));
        let s = z.series(&int(1)).unwrap();
        assert_eq!(s.coefficient_of_t(&int(1)), &MotPoly::l_pow(int(-1)) - &MotPoly::l_pow(int(-2)));
    }

    #[test]
    fn poles() {
        assert_eq!(ZetaExpr::factor(fac(1, 1)).candidate_poles().into_iter().collect::<Vec<_>>(), vec![int(-1)]);
        assert!(ZetaExpr::factor(fac(0, 5)).candidate_poles().is_empty());
        let z = ZetaExpr::factor(StdFactor::new(int(3), int(4)).unwrap());
        assert!(z.candidate_poles().contains(&rat(-4, 3)));
    }

    #[test]
    fn bad_factor_rejected() {
        assert!(StdFactor::new(int(-1), int(1)).is_err());
        assert!(StdFactor::new(int(1), int(0)).is_err());
    }
}
