//! Text format for stratifications.
//!
//! ```text
//! dimension = 2
//! gindex = 7
//! symbol C0 chi = 1
//! stratum { class = -1 + L; N = [1/7, 0]; nu = [4/7, 1]; group = (1; 0,0) }
//! ```
//!
//! Class expressions are integer polynomials in `L` and bracketed symbols
//! `[NAME]` built with `+ - * ^` and parentheses. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::parse_group_literal;
use crate::rat::{fmt_rat, Rat};
use crate::resolution::Generated;
use crate::symring::{ChiEnv, Monomial, MotPoly};
use crate::zetacore::{Stratification, Stratum};

/// A parsed strata file: the stratification and its declared symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataFile {
    pub strata: Stratification,
    /// Declared symbols with their Euler characteristic when given.
    pub symbols: BTreeMap<String, Option<i64>>,
}

impl StrataFile {
    pub fn from_generated(g: &Generated) -> Self {
        let mut symbols: BTreeMap<String, Option<i64>> =
            g.chi.iter().map(|(k, v)| (k.clone(), Some(*v))).collect();
        for s in &g.strata.strata {
            for name in s.klass.symbols() {
                symbols.entry(name).or_insert(None);
            }
        }
        StrataFile { strata: g.strata.clone(), symbols }
    }

    /// Euler characteristics of the symbols that declare one.
    pub fn chi_env(&self) -> ChiEnv {
        self.symbols.iter().filter_map(|(k, v)| v.map(|c| (k.clone(), c))).collect()
    }
}

fn list(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
}

/// Canonical text; parsing it back yields an equal [`StrataFile`].
pub fn print_strata(f: &StrataFile) -> String {
    let mut out = String::new();
    writeln!(out, "dimension = {}", f.strata.n).unwrap();
    writeln!(out, "gindex = {}", f.strata.r).unwrap();
    for (name, chi) in &f.symbols {
        match chi {
            Some(c) => writeln!(out, "symbol {name} chi = {c}").unwrap(),
            None => writeln!(out, "symbol {name}").unwrap(),
        }
    }
    for s in &f.strata.strata {
        out.push_str("\nstratum {\n");
        writeln!(out, "  class = {};", s.klass).unwrap();
        writeln!(out, "  N = [{}];", list(&s.n_vec)).unwrap();
        writeln!(out, "  nu = [{}];", list(&s.nu_vec)).unwrap();
        writeln!(out, "  group = {}", s.group).unwrap();
        out.push_str("}\n");
    }
    out
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    symbols: BTreeMap<String, Option<i64>>,
}

impl Cursor {
    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, at: usize, msg: impl Into<String>) -> Error {
        let (line, col) = self.location(at);
        Error::Parse { line, col, msg: msg.into() }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.pos, msg)
    }

    fn skip_inline(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == '#' {
                while self.chars.get(self.pos).is_some_and(|&c| c != '\n') {
                    self.pos += 1;
                }
            } else if c.is_whitespace() && c != '\n' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn skip_all(&mut self) {
        loop {
            self.skip_inline();
            if self.chars.get(self.pos) == Some(&'\n') {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_all();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_all();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let at = self.pos;
        let got = self.ident()?;
        if got == word {
            Ok(())
        } else {
            Err(self.error_at(at, format!("expected '{word}', found '{got}'")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_all();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.error_at(start, "expected an integer"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let at = self.pos;
        let v = self.integer()?;
        i64::try_from(v).map_err(|_| self.error_at(at, "integer out of range"))
    }

    fn rational(&mut self) -> Result<Rat> {
        let n = self.integer()?;
        if self.eat('/') {
            let at = self.pos;
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.error_at(at, "zero denominator"));
            }
            return Ok(Rat::new(n, d));
        }
        Ok(Rat::from_integer(n))
    }

    fn rat_list(&mut self) -> Result<Vec<Rat>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.rational()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn expr(&mut self) -> Result<MotPoly> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MotPoly> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MotPoly> {
        let at = self.pos;
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = if self.eat('(') {
            let e = self.rational()?;
            self.expect(')')?;
            e
        } else {
            Rat::from_integer(self.integer()?)
        };
        if e.is_integer() && e >= Rat::zero() {
            let k = u32::try_from(e.to_integer()).map_err(|_| self.error_at(at, "exponent too large"))?;
            return Ok(base.pow(k));
        }
        // Negative or fractional powers are only meaningful for a bare power of L.
        match base.as_monomial() {
            Some((m, c)) if c.is_one() && m.t.is_zero() && m.syms.is_one() => {
                Ok(MotPoly::l_pow(&m.l * &e))
            }
            _ => Err(self.error_at(at, "only powers of L may have negative or fractional exponents")),
        }
    }

    fn atom(&mut self) -> Result<MotPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let name = self.ident()?;
                self.expect(']')?;
                if !self.symbols.contains_key(&name) {
                    return Err(Error::UndeclaredSymbol(name));
                }
                Ok(MotPoly::symbol(name))
            }
            Some('L') => {
                self.pos += 1;
                Ok(MotPoly::l())
            }
            Some(c) if c.is_ascii_digit() => Ok(MotPoly::monomial(self.integer()?, Monomial::one())),
            Some(c) => Err(self.error(format!("unexpected '{c}' in class expression"))),
            None => Err(self.error("unexpected end of input in class expression")),
        }
    }

    /// Raw text of a balanced parenthesized group literal.
    fn group_text(&mut self) -> Result<(usize, String)> {
        self.skip_all();
        let start = self.pos;
        if self.chars.get(self.pos) != Some(&'(') {
            return Err(self.error("expected a group literal"));
        }
        let mut depth = 0;
        while let Some(&c) = self.chars.get(self.pos) {
            self.pos += 1;
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok((start, self.chars[start..self.pos].iter().collect()));
                    }
                }
                _ => {}
            }
        }
        Err(self.error_at(start, "unterminated group literal"))
    }
}

struct RawStratum {
    at: usize,
    klass: MotPoly,
    n_vec: Vec<Rat>,
    nu_vec: Vec<Rat>,
    group: crate::groups::GroupAction,
}

fn stratum_block(c: &mut Cursor, at: usize) -> Result<RawStratum> {
    c.expect('{')?;
    let mut klass = None;
    let mut n_vec = None;
    let mut nu_vec = None;
    let mut group = None;
    loop {
        if c.eat('}') {
            break;
        }
        let key_at = c.pos;
        let key = c.ident()?;
        c.expect('=')?;
        match key.as_str() {
            "class" => klass = Some(c.expr()?),
            "N" => n_vec = Some(c.rat_list()?),
            "nu" => nu_vec = Some(c.rat_list()?),
            "group" => {
                let (g_at, text) = c.group_text()?;
                group = Some(parse_group_literal(&text).map_err(|e| match e {
                    Error::BadGroup(msg) => c.error_at(g_at, msg),
                    other => other,
                })?);
            }
            other => return Err(c.error_at(key_at, format!("unknown field '{other}'"))),
        }
        if !c.eat(';') {
            c.expect('}')?;
            break;
        }
    }
    let missing = |f: &str| c.error_at(at, format!("stratum is missing '{f}'"));
    Ok(RawStratum {
        at,
        klass: klass.ok_or_else(|| missing("class"))?,
        n_vec: n_vec.ok_or_else(|| missing("N"))?,
        nu_vec: nu_vec.ok_or_else(|| missing("nu"))?,
        group: group.ok_or_else(|| missing("group"))?,
    })
}

/// Parses a strata file. Symbols must be declared before use.
pub fn parse_strata(text: &str) -> Result<StrataFile> {
    let mut c = Cursor { chars: text.chars().collect(), pos: 0, symbols: BTreeMap::new() };
    let mut dimension = None;
    let mut gindex = None;
    let mut raw = Vec::new();
    while c.peek().is_some() {
        let at = c.pos;
        let word = c.ident()?;
        match word.as_str() {
            "dimension" | "gindex" => {
                c.expect('=')?;
                let v = c.small_int()?;
                if v < 1 {
                    return Err(c.error_at(at, format!("{word} must be positive")));
                }
                if word == "dimension" {
                    dimension = Some(v as usize);
                } else {
                    gindex = Some(v as u64);
                }
            }
            "symbol" => {
                let name = c.ident()?;
                c.skip_inline();
                let mut chi = None;
                if c.chars.get(c.pos).is_some_and(|ch| ch.is_alphabetic()) {
                    c.keyword("chi")?;
                    c.expect('=')?;
                    chi = Some(c.small_int()?);
                }
                c.symbols.insert(name, chi);
            }
            "stratum" => raw.push(stratum_block(&mut c, at)?),
            other => return Err(c.error_at(at, format!("unknown statement '{other}'"))),
        }
    }
    let n = dimension.ok_or_else(|| c.error_at(0, "missing 'dimension'"))?;
    let r = gindex.ok_or_else(|| c.error_at(0, "missing 'gindex'"))?;
    let mut strata = Vec::new();
    for s in raw {
        if s.n_vec.len() != n || s.nu_vec.len() != n || s.group.dimension() != n {
            let (line, col) = c.location(s.at);
            return Err(Error::DimensionMismatch(format!(
                "stratum at {line}:{col} has {} N values, {} nu values and a group in dimension {}; expected {n}",
                s.n_vec.len(),
                s.nu_vec.len(),
                s.group.dimension()
            )));
        }
        strata.push(Stratum::new(s.klass, s.n_vec, s.nu_vec, s.group));
    }
    Ok(StrataFile { strata: Stratification::new(n, r, strata)?, symbols: c.symbols })
}
