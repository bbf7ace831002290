//! Exact rationals. Everything numeric in the crate that is not a plain
//! group exponent is a [`Rat`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `INT` or `INT/INT`, with an optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadParams(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Parses a comma separated list of rationals such as `1,3/2,0`.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

/// Exact `base^exp` for rational `exp`, when the root exists in Q.
pub fn rat_pow(base: &Rat, exp: &Rat) -> Result<Rat> {
    let fail = || Error::FractionalPowerUnevaluable {
        base: fmt_rat(base),
        exponent: fmt_rat(exp),
    };
    let q = exp.denom().to_u32().ok_or_else(fail)?;
    let p = exp.numer().to_i32().ok_or_else(fail)?;
    if base.is_zero() {
        return if p > 0 { Ok(Rat::zero()) } else { Err(fail()) };
    }
    let root = if q == 1 {
        base.clone()
    } else {
        if base.is_negative() && q % 2 == 0 {
            return Err(fail());
        }
        let rn = base.numer().nth_root(q);
        let rd = base.denom().nth_root(q);
        if num_traits::pow(rn.clone(), q as usize) != *base.numer()
            || num_traits::pow(rd.clone(), q as usize) != *base.denom()
        {
            return Err(fail());
        }
        Rat::new(rn, rd)
    };
    Ok(root.pow(p))
}
