//! Rational functions in `s` arising as Euler specializations: a structured
//! sum of `c * prod 1/(N s + nu)` together with its reduced quotient.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{fmt_rat, Rat};

/// Dense univariate polynomial over `Q`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let zero = Rat::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        Self::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    /// `self * (s + c)`
    pub fn mul_linear(&self, c: &Rat) -> UPoly {
        let mut out = vec![Rat::zero(); self.0.len() + 1];
        for (i, x) in self.0.iter().enumerate() {
            out[i + 1] += x;
            out[i] += x * c;
        }
        Self::from_coeffs(out)
    }

    /// Exact quotient by `(s + c)` when `-c` is a root.
    pub fn div_linear(&self, c: &Rat) -> Option<UPoly> {
        if self.eval(&-c) != Rat::zero() {
            return None;
        }
        let n = self.0.len();
        let mut q2 = vec![Rat::zero(); n.saturating_sub(1)];
        let mut acc = Rat::zero();
        for i in (1..n).rev() {
            acc = &self.0[i] - &acc * c;
            q2[i - 1] = acc.clone();
        }
        Some(Self::from_coeffs(q2))
    }

    pub fn eval(&self, s: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * s + c)
    }
}

/// Renders `8*s^2 + 16*s + 12` for integer-valued coefficient lists.
fn render_int_poly(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, x) in c.iter().enumerate().rev() {
        if x.is_zero() {
            continue;
        }
        let mag = x.abs();
        let body = match i {
            0 => mag.to_string(),
            _ => {
                let var = if i == 1 { "s".to_string() } else { format!("s^{i}") };
                if mag.is_one() { var } else { format!("{mag}*{var}") }
            }
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
    if out.is_empty() { "0".into() } else { out }
}

/// One structured summand: `coeff * prod 1/(N s + nu)`.
pub type TopTerm = (Rat, Vec<(Rat, Rat)>);

/// Topological zeta function; equality compares the reduced quotient.
#[derive(Clone, Debug)]
pub struct TopZeta {
    terms: Vec<TopTerm>,
    /// Reduced numerator over the monic denominator `prod (s + c)^e`.
    num: UPoly,
    den: BTreeMap<Rat, u32>,
}

impl TopZeta {
    pub fn from_terms(terms: Vec<TopTerm>) -> Self {
        // Normalize each summand to c' / prod (s + c)^e.
        let mut normalized: Vec<(Rat, BTreeMap<Rat, u32>)> = Vec::new();
        for (c, fs) in &terms {
            let mut coeff = c.clone();
            let mut den: BTreeMap<Rat, u32> = BTreeMap::new();
            for (n, nu) in fs {
                if n.is_zero() {
                    coeff /= nu;
                } else {
                    coeff /= n;
                    *den.entry(nu / n).or_default() += 1;
                }
            }
            normalized.push((coeff, den));
        }
        let mut den: BTreeMap<Rat, u32> = BTreeMap::new();
        for (_, d) in &normalized {
            for (c, e) in d {
                let slot = den.entry(c.clone()).or_default();
                *slot = (*slot).max(*e);
            }
        }
        let mut num = UPoly::default();
        for (coeff, d) in &normalized {
            let mut p = UPoly::constant(coeff.clone());
            for (c, e) in &den {
                for _ in d.get(c).copied().unwrap_or(0)..*e {
                    p = p.mul_linear(c);
                }
            }
            num = num.add(&p);
        }
        if num.is_zero() {
            den.clear();
        }
        for (c, e) in den.iter_mut() {
            while *e > 0 {
                match num.div_linear(c) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        TopZeta { terms, num, den }
    }

    pub fn terms(&self) -> &[TopTerm] {
        &self.terms
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    /// Monic denominator as `{c: e}` meaning `prod (s + c)^e`.
    pub fn denominator(&self) -> &BTreeMap<Rat, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Actual poles with multiplicities, ascending.
    pub fn poles(&self) -> Vec<(Rat, u32)> {
        let mut p: Vec<(Rat, u32)> = self.den.iter().map(|(c, e)| (-c, *e)).collect();
        p.sort();
        p
    }

    pub fn eval(&self, s: &Rat) -> Option<Rat> {
        let mut d = Rat::one();
        for (c, e) in &self.den {
            d *= (s + c).pow(*e as i32);
        }
        (!d.is_zero()).then(|| self.num.eval(s) / d)
    }

    pub fn mul(&self, other: &TopZeta) -> TopZeta {
        let mut terms = Vec::new();
        for (a, fa) in &self.terms {
            for (b, fb) in &other.terms {
                let mut f = fa.clone();
                f.extend(fb.iter().cloned());
                terms.push((a * b, f));
            }
        }
        TopZeta::from_terms(terms)
    }

    /// Integer-normalized `(P(s), k, [(a, b, e)])` for `P / (k * prod (a s + b)^e)`.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt, Vec<(BigInt, BigInt, u32)>) {
        let mut num = self.num.clone();
        let mut lin = Vec::new();
        for (c, e) in &self.den {
            let a = c.denom().clone();
            let b = c.numer().clone();
            num = num.scale(&Rat::from_integer(a.clone()).pow(*e as i32));
            lin.push((a, b, *e));
        }
        let l = num.coeffs().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = num
            .coeffs()
            .iter()
            .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(l.clone(), |acc, x| acc.gcd(x));
        let g = if g.is_zero() { BigInt::one() } else { g };
        (ints.iter().map(|x| x / &g).collect(), &l / &g, lin)
    }

    /// Structured sum as printed before reduction, e.g. `7 * 1/(s + 1) * 1/(s + 1)`.
    pub fn render_terms(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, fs)| {
                let mut parts = vec![fmt_rat(c)];
                for (n, nu) in fs {
                    parts.push(format!("1/({})", render_linear(n, nu)));
                }
                parts.join(" * ")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_latex(&self) -> String {
        let (p, k, lin) = self.integer_form();
        let num = render_int_poly(&p).replace('*', "");
        let mut den = Vec::new();
        if !k.is_one() {
            den.push(k.to_string());
        }
        for (a, b, e) in &lin {
            let f = format!("({})", render_linear_int(a, b).replace('*', ""));
            den.push(if *e == 1 { f } else { format!("{f}^{{{e}}}") });
        }
        if den.is_empty() {
            num
        } else {
            format!("\\frac{{{num}}}{{{}}}", den.join(""))
        }
    }
}

fn render_linear_int(a: &BigInt, b: &BigInt) -> String {
    let s = if a.is_one() { "s".to_string() } else { format!("{a}*s") };
    if b.is_zero() {
        s
    } else if b.is_negative() {
        format!("{s} - {}", b.abs())
    } else {
        format!("{s} + {b}")
    }
}

fn render_linear(n: &Rat, nu: &Rat) -> String {
    if n.is_zero() {
        return fmt_rat(nu);
    }
    let s = if n.is_one() { "s".to_string() } else { format!("{}*s", fmt_rat(n)) };
    format!("{s} + {}", fmt_rat(nu))
}

impl PartialEq for TopZeta {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for TopZeta {}

impl fmt::Display for TopZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, k, lin) = self.integer_form();
        let nonzero = p.iter().filter(|x| !x.is_zero()).count();
        let num = render_int_poly(&p);
        let num = if nonzero > 1 { format!("({num})") } else { num };
        let mut den = Vec::new();
        if !k.is_one() {
            den.push(k.to_string());
        }
        for (a, b, e) in &lin {
            let l = format!("({})", render_linear_int(a, b));
            den.push(if *e == 1 { l } else { format!("{l}^{e}") });
        }
        match den.len() {
            0 => write!(f, "{num}"),
            1 => write!(f, "{num} / {}", den[0]),
            _ => write!(f, "{num} / ({})", den.join(" * ")),
        }
    }
}
