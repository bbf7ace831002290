//! Laurent polynomials in `L` and `T = L^(-s)` with rational exponents,
//! integer coefficients and free commuting variety-class symbols.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, rat_pow, Rat};

/// Euler characteristics of class symbols.
pub type ChiEnv = BTreeMap<String, i64>;

/// A declared variety class, e.g. `[C0]`, with an optional Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassSymbol {
    pub name: String,
    pub chi: Option<i64>,
}

impl ClassSymbol {
    pub fn new(name: impl Into<String>, chi: Option<i64>) -> Self {
        Self { name: name.into(), chi }
    }
}

/// Product of class symbols with positive exponents, sorted by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymMono(Vec<(String, u32)>);

impl SymMono {
    pub fn one() -> Self {
        SymMono(Vec::new())
    }

    pub fn var(name: impl Into<String>) -> Self {
        SymMono(vec![(name.into(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(n, e)| (n.as_str(), *e))
    }

    pub fn mul(&self, other: &SymMono) -> SymMono {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut acc: BTreeMap<&str, u32> = BTreeMap::new();
        for (n, e) in self.iter().chain(other.iter()) {
            *acc.entry(n).or_default() += e;
        }
        SymMono(acc.into_iter().map(|(n, e)| (n.to_string(), e)).collect())
    }
}

/// `L^l * T^t * syms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub t: Rat,
    pub l: Rat,
    pub syms: SymMono,
}

fn small(r: &Rat) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

fn cmp_rat(a: &Rat, b: &Rat) -> Ordering {
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => {
            (an as i128 * bd as i128).cmp(&(bn as i128 * ad as i128))
        }
        _ => a.cmp(b),
    }
}

fn hash_rat<H: Hasher>(r: &Rat, state: &mut H) {
    match small(r) {
        Some((n, d)) => {
            n.hash(state);
            d.hash(state);
        }
        None => {
            r.numer().hash(state);
            r.denom().hash(state);
        }
    }
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        hash_rat(&self.t, state);
        hash_rat(&self.l, state);
        self.syms.hash(state);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_rat(&self.t, &other.t)
            .then_with(|| cmp_rat(&self.l, &other.l))
            .then_with(|| self.syms.cmp(&other.syms))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { t: Rat::zero(), l: Rat::zero(), syms: SymMono::one() }
    }

    pub fn lt(l: Rat, t: Rat) -> Self {
        Monomial { t, l, syms: SymMono::one() }
    }

    pub fn is_one(&self) -> bool {
        self.t.is_zero() && self.l.is_zero() && self.syms.is_one()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            t: &self.t + &other.t,
            l: &self.l + &other.l,
            syms: self.syms.mul(&other.syms),
        }
    }
}

/// Exact Laurent polynomial over the integers; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MotPoly {
    pub fn zero() -> Self {
        MotPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Monomial::one())
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = MotPoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// `L^e`
    pub fn l_pow(e: Rat) -> Self {
        Self::monomial(1, Monomial::lt(e, Rat::zero()))
    }

    /// `T^e`
    pub fn t_pow(e: Rat) -> Self {
        Self::monomial(1, Monomial::lt(Rat::zero(), e))
    }

    /// `L`
    pub fn l() -> Self {
        Self::l_pow(Rat::one())
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Self::monomial(1, Monomial { t: Rat::zero(), l: Rat::zero(), syms: SymMono::var(name) })
    }

    /// `1 - x` for a monomial `x`.
    pub fn one_minus(x: &Monomial) -> Self {
        let mut p = MotPoly::one();
        p.add_term(x.clone(), -BigInt::one());
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MotPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: by `T` exponent, then `L` exponent, then symbols.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The single monomial of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigInt) -> MotPoly {
        if c.is_zero() {
            return MotPoly::zero();
        }
        MotPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MotPoly {
        MotPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MotPoly {
        let mut acc = MotPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Keeps only terms whose `T` exponent is at most `max`.
    pub fn truncate_t(&self, max: &Rat) -> MotPoly {
        MotPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| cmp_rat(&m.t, max) != Ordering::Greater)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `T^t`, as a polynomial without `T`.
    pub fn coefficient_of_t(&self, t: &Rat) -> MotPoly {
        MotPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| &m.t == t)
                .map(|(m, c)| (Monomial { t: Rat::zero(), ..m.clone() }, c.clone()))
                .collect(),
        }
    }

    pub fn min_t(&self) -> Option<Rat> {
        self.terms.keys().map(|m| m.t.clone()).min_by(cmp_rat)
    }

    pub fn has_t(&self) -> bool {
        self.terms.keys().any(|m| !m.t.is_zero())
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.syms.iter().map(|(n, _)| n.to_string()))
            .collect()
    }

    /// All `L` and `T` exponents appearing in the polynomial.
    pub fn exponents(&self) -> impl Iterator<Item = &Rat> {
        self.terms.keys().flat_map(|m| [&m.l, &m.t])
    }

    /// Exact value at `L = p` with symbols valued by `env`. `T` must not occur.
    pub fn eval_l(&self, p: &Rat, env: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            if !m.t.is_zero() {
                return Err(Error::UnboundT);
            }
            let mut v = Rat::from_integer(c.clone()) * rat_pow(p, &m.l)?;
            for (name, e) in m.syms.iter() {
                let x = env
                    .get(name)
                    .ok_or_else(|| Error::MissingSymbolValue(name.to_string()))?;
                v *= x.pow(e as i32);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Euler characteristic specialization: `L -> 1`, `T -> 1`, symbols to their `chi`.
    pub fn specialize_chi(&self, chi: &ChiEnv) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (name, e) in m.syms.iter() {
                let x = chi.get(name).ok_or_else(|| Error::MissingChi(name.to_string()))?;
                v *= num_traits::pow(BigInt::from(*x), e as usize);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact quotient by `1 - x` for a symbol-free monomial `x != 1`, if it exists.
    pub fn div_one_minus(&self, x: &Monomial) -> Option<MotPoly> {
        assert!(x.syms.is_one() && !x.is_one(), "divisor must be 1 - L^a T^b with (a, b) != 0");
        let norm = &x.l * &x.l + &x.t * &x.t;
        // Each monomial sits at anchor + k * x for an integer k; group by anchor.
        let mut lines: HashMap<Monomial, BTreeMap<BigInt, BigInt>> = HashMap::new();
        for (m, c) in &self.terms {
            let pos = (&m.l * &x.l + &m.t * &x.t) / &norm;
            let k = pos.floor().to_integer();
            let kr = Rat::from_integer(k.clone());
            let anchor = Monomial {
                l: &m.l - &kr * &x.l,
                t: &m.t - &kr * &x.t,
                syms: m.syms.clone(),
            };
            lines.entry(anchor).or_default().insert(k, c.clone());
        }
        let mut q = MotPoly::zero();
        for (anchor, coeffs) in lines {
            let mut running = BigInt::zero();
            let mut last: Option<BigInt> = None;
            for (k, c) in coeffs {
                if let Some(prev) = &last {
                    // cumulative sum is constant on the gap (prev, k)
                    if !running.is_zero() {
                        let mut j = prev.clone();
                        while j < k {
                            q.add_term(shift(&anchor, x, &j), running.clone());
                            j += 1;
                        }
                    }
                }
                running += c;
                last = Some(k);
            }
            if !running.is_zero() {
                return None;
            }
        }
        Some(q)
    }

    fn product(a: &MotPoly, b: &MotPoly) -> MotPoly {
        if a.is_zero() || b.is_zero() {
            return MotPoly::zero();
        }
        if let Some((m, c)) = b.as_monomial() {
            return a.mul_monomial(m).scale(c);
        }
        if let Some((m, c)) = a.as_monomial() {
            return b.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MotPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Content monomial: minimal `L` and `T` exponents over all terms.
    pub fn lt_content(&self) -> Monomial {
        let l = self.terms.keys().map(|m| m.l.clone()).min_by(cmp_rat).unwrap_or_default();
        let t = self.terms.keys().map(|m| m.t.clone()).min_by(cmp_rat).unwrap_or_default();
        Monomial::lt(l, t)
    }

    /// Canonical text with the content monomial pulled out, e.g. `L^-2 * (1 + L)`.
    pub fn render_factored(&self) -> String {
        if self.terms.len() < 2 {
            return self.to_string();
        }
        let content = self.lt_content();
        if content.is_one() {
            return self.to_string();
        }
        let inv = Monomial::lt(-&content.l, -&content.t);
        let rest = self.mul_monomial(&inv);
        format!("{} * ({})", render_monomial(&content, &BigInt::one()), rest)
    }
}

fn shift(anchor: &Monomial, x: &Monomial, k: &BigInt) -> Monomial {
    let kr = Rat::from_integer(k.clone());
    Monomial {
        l: &anchor.l + &kr * &x.l,
        t: &anchor.t + &kr * &x.t,
        syms: anchor.syms.clone(),
    }
}

/// Exponent text: `L`, `L^2`, `L^-2`, `L^(1/2)`, `L^(-1/2)`.
pub(crate) fn fmt_power(base: &str, e: &Rat) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(base.to_string())
    } else if e.is_integer() {
        Some(format!("{base}^{}", e.numer()))
    } else {
        Some(format!("{base}^({})", fmt_rat(e)))
    }
}

/// Renders `|c| * L^.. * T^.. * [S]^..` ignoring the sign of `c`.
pub(crate) fn render_monomial(m: &Monomial, c: &BigInt) -> String {
    let mut parts: Vec<String> = Vec::new();
    parts.extend(fmt_power("L", &m.l));
    parts.extend(fmt_power("T", &m.t));
    for (name, e) in m.syms.iter() {
        parts.extend(fmt_power(&format!("[{name}]"), &Rat::from_integer(e.into())));
    }
    let a = c.abs();
    if parts.is_empty() {
        a.to_string()
    } else if a.is_one() {
        parts.join(" * ")
    } else {
        format!("{a} * {}", parts.join(" * "))
    }
}

impl fmt::Display for MotPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = render_monomial(m, c);
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MotPoly> for &'a MotPoly {
    type Output = MotPoly;
    fn add(self, rhs: &MotPoly) -> MotPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MotPoly {
    type Output = MotPoly;
    fn add(mut self, rhs: MotPoly) -> MotPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MotPoly> for MotPoly {
    fn add_assign(&mut self, rhs: &MotPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a MotPoly> for &'a MotPoly {
    type Output = MotPoly;
    fn sub(self, rhs: &MotPoly) -> MotPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for MotPoly {
    type Output = MotPoly;
    fn sub(self, rhs: MotPoly) -> MotPoly {
        &self - &rhs
    }
}

impl Neg for &MotPoly {
    type Output = MotPoly;
    fn neg(self) -> MotPoly {
        MotPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MotPoly {
    type Output = MotPoly;
    fn neg(self) -> MotPoly {
        -&self
    }
}

impl<'a> Mul<&'a MotPoly> for &'a MotPoly {
    type Output = MotPoly;
    fn mul(self, rhs: &MotPoly) -> MotPoly {
        MotPoly::product(self, rhs)
    }
}

impl Mul for MotPoly {
    type Output = MotPoly;
    fn mul(self, rhs: MotPoly) -> MotPoly {
        MotPoly::product(&self, &rhs)
    }
}

/// Least common multiple of all exponent denominators (at least 1).
pub fn exponent_lcm(p: &MotPoly) -> BigInt {
    p.exponents().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
