//! LaTeX and JSON renderings of polynomials and zeta expressions.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::motpoly::{Monomial, MotPoly};
use super::zeta::{StdFactor, ZetaExpr};
use crate::rat::Rat;

fn latex_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_power(base: &str, e: &Rat) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(base.to_string())
    } else {
        Some(format!("{base}^{{{}}}", latex_rat(e)))
    }
}

fn latex_monomial(m: &Monomial, c: &BigInt) -> String {
    let mut parts: Vec<String> = Vec::new();
    parts.extend(latex_power("\\LL", &m.l));
    parts.extend(latex_power("T", &m.t));
    for (name, e) in m.syms.iter() {
        parts.extend(latex_power(&format!("[\\mathrm{{{name}}}]"), &Rat::from_integer(e.into())));
    }
    let a = c.abs();
    if parts.is_empty() {
        a.to_string()
    } else if a.is_one() {
        parts.join(" ")
    } else {
        format!("{a} {}", parts.join(" "))
    }
}

pub fn poly_latex(p: &MotPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let body = latex_monomial(m, c);
        match (i, c.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}

/// `N s + nu` in LaTeX.
fn latex_linear(f: &StdFactor) -> String {
    let s_part = if f.n.is_zero() {
        None
    } else if f.n.is_one() {
        Some("s".to_string())
    } else {
        Some(format!("{}s", latex_rat(&f.n)))
    };
    match s_part {
        None => latex_rat(&f.nu),
        Some(s) => format!("{s}+{}", latex_rat(&f.nu)),
    }
}

pub fn factor_latex(f: &StdFactor) -> String {
    let e = latex_linear(f);
    format!("\\frac{{(\\LL-1)\\LL^{{-({e})}}}}{{1-\\LL^{{-({e})}}}}")
}

pub fn zeta_latex(z: &ZetaExpr) -> String {
    if z.is_zero() {
        return "0".into();
    }
    z.terms()
        .map(|(fs, c)| {
            let mut parts = Vec::new();
            if fs.is_empty() || !c.is_one() {
                parts.push(if fs.is_empty() || c.len() == 1 {
                    poly_latex(c)
                } else {
                    format!("\\left({}\\right)", poly_latex(c))
                });
            }
            parts.extend(fs.iter().map(factor_latex));
            parts.join(" \\cdot ")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn json_rat(r: &Rat) -> Value {
    json!({ "num": json_int(r.numer()), "den": json_int(r.denom()) })
}

pub fn poly_json(p: &MotPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let syms: serde_json::Map<String, Value> =
                    m.syms.iter().map(|(n, e)| (n.to_string(), json!(e))).collect();
                json!({ "coeff": json_int(c), "L": json_rat(&m.l), "T": json_rat(&m.t), "symbols": syms })
            })
            .collect(),
    )
}

pub fn zeta_json(z: &ZetaExpr) -> Value {
    Value::Array(
        z.terms()
            .map(|(fs, c)| {
                let factors: Vec<Value> =
                    fs.iter().map(|f| json!({ "N": json_rat(&f.n), "nu": json_rat(&f.nu) })).collect();
                json!({ "coeff": poly_json(c), "factors": factors })
            })
            .collect(),
    )
}
