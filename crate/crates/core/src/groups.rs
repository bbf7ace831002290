//! Finite abelian groups acting diagonally on `C^n`, given by a type
//! `(d_1, ..., d_r; A)`: the `j`-th cyclic factor of order `d_j` acts on
//! coordinate `i` by `xi_{d_j}^{a_ji}`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Largest `prod d_j` accepted for enumeration.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Diagonal exponents `eps_i` in `[0, d_exp)`: the element acts by `xi_{d_exp}^{eps_i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub eps: Vec<u64>,
    pub d_exp: u64,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.eps.iter().all(|&e| e == 0)
    }

    /// `(1/d) sum k_i eps_i`
    pub fn age(&self, k: &[Rat]) -> Rat {
        assert_eq!(k.len(), self.eps.len(), "weight vector length");
        let s: Rat = k.iter().zip(&self.eps).map(|(ki, &e)| ki * Rat::from_integer(e.into())).sum();
        s / Rat::from_integer(self.d_exp.into())
    }

    /// `(1/d) sum k_i e_i` with `e_i = eps_i`, or `d` when `eps_i = 0`.
    pub fn weight(&self, k: &[Rat]) -> Rat {
        assert_eq!(k.len(), self.eps.len(), "weight vector length");
        let s: Rat = k
            .iter()
            .zip(&self.eps)
            .map(|(ki, &e)| ki * Rat::from_integer(if e == 0 { self.d_exp } else { e }.into()))
            .sum();
        s / Rat::from_integer(self.d_exp.into())
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            eps: self.eps.iter().map(|&e| (self.d_exp - e) % self.d_exp).collect(),
            d_exp: self.d_exp,
        }
    }

    /// Number of coordinates fixed by the element.
    pub fn zeros(&self) -> usize {
        self.eps.iter().filter(|&&e| e == 0).count()
    }
}

/// A diagonal abelian action of type `(d; A)` with its enumerated elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    n: usize,
    orders: Vec<u64>,
    /// Entries reduced into `[0, d_j)`.
    matrix: Vec<Vec<u64>>,
    d_exp: u64,
    elements: Vec<GroupElement>,
}

fn reduce_mod(x: i64, d: u64) -> u64 {
    x.rem_euclid(d as i64) as u64
}

impl GroupAction {
    pub fn new(orders: Vec<u64>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::BadGroup("at least one cyclic factor is required".into()));
        }
        if orders.len() != matrix.len() {
            return Err(Error::BadGroup(format!(
                "{} orders but {} exponent rows",
                orders.len(),
                matrix.len()
            )));
        }
        if orders.contains(&0) {
            return Err(Error::BadGroup("cyclic orders must be positive".into()));
        }
        let n = matrix[0].len();
        if n == 0 {
            return Err(Error::BadGroup("dimension must be positive".into()));
        }
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch("exponent rows have different lengths".into()));
        }
        let product = orders.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
        if product > ENUMERATION_LIMIT {
            return Err(Error::GroupTooLarge(product));
        }
        let d_exp = orders.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let matrix: Vec<Vec<u64>> = orders
            .iter()
            .zip(&matrix)
            .map(|(&d, row)| row.iter().map(|&a| reduce_mod(a, d)).collect())
            .collect();
        let gens: Vec<Vec<u64>> = orders
            .iter()
            .zip(&matrix)
            .map(|(&d, row)| row.iter().map(|&a| a * (d_exp / d) % d_exp).collect())
            .collect();
        let elements = closure(n, d_exp, &gens);
        Ok(GroupAction { n, orders, matrix, d_exp, elements })
    }

    /// `1/d (a_1, ..., a_n)`
    pub fn cyclic(d: u64, a: Vec<i64>) -> Result<Self> {
        Self::new(vec![d], vec![a])
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(vec![1], vec![vec![0; n]]).expect("trivial group is valid")
    }

    /// Builds an action from an element set closed under addition, choosing generators greedily.
    pub fn from_elements(n: usize, d_exp: u64, elems: &[Vec<u64>]) -> Result<Self> {
        let g = elems.iter().flatten().fold(d_exp, |acc, &e| acc.gcd(&e));
        let d = d_exp / g.max(1);
        let normalized: BTreeSet<Vec<u64>> =
            elems.iter().map(|e| e.iter().map(|&x| (x / g) % d).collect()).collect();
        let mut gens: Vec<Vec<u64>> = Vec::new();
        let mut span: HashSet<Vec<u64>> = [vec![0; n]].into_iter().collect();
        for e in &normalized {
            if !span.contains(e) {
                gens.push(e.clone());
                span = closure(n, d, &gens).into_iter().map(|x| x.eps).collect();
            }
        }
        if span.len() != normalized.len() {
            return Err(Error::BadGroup("element set is not closed under addition".into()));
        }
        if gens.is_empty() {
            return Ok(Self::trivial(n));
        }
        let mut orders = Vec::new();
        let mut matrix = Vec::new();
        for gen in &gens {
            let o = gen.iter().fold(1u64, |acc, &x| acc.lcm(&(d / d.gcd(&x))));
            orders.push(o);
            matrix.push(gen.iter().map(|&x| (x * o / d) as i64).collect());
        }
        Self::new(orders, matrix)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn d_exp(&self) -> u64 {
        self.d_exp
    }

    /// Distinct elements in lexicographic order of their exponent vectors.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// No element fixes a hyperplane pointwise, i.e. has exactly `n - 1` zero exponents.
    pub fn is_small(&self) -> bool {
        self.elements.iter().all(|g| g.zeros() + 1 != self.n)
    }

    /// The intrinsic element set: exponent vectors over the true exponent of the group.
    pub fn canonical_elements(&self) -> (u64, BTreeSet<Vec<u64>>) {
        let g = self.elements.iter().flat_map(|e| &e.eps).fold(self.d_exp, |acc, &x| acc.gcd(&x));
        let d = self.d_exp / g;
        (d, self.elements.iter().map(|e| e.eps.iter().map(|&x| (x / g) % d).collect()).collect())
    }

    /// Two presentations of the same action.
    pub fn same_group(&self, other: &GroupAction) -> bool {
        self.n == other.n && self.canonical_elements() == other.canonical_elements()
    }

    /// Quotients out the subgroup generated by reflections; returns the small
    /// action on `y_i = x_i^{m_i}` and the vector `m`.
    pub fn small_reduce(&self) -> (GroupAction, Vec<u64>) {
        let d = self.d_exp;
        let m: Vec<u64> = (0..self.n)
            .map(|i| {
                let g = self
                    .elements
                    .iter()
                    .filter(|e| e.eps.iter().enumerate().all(|(j, &x)| j == i || x == 0))
                    .fold(d, |acc, e| acc.gcd(&e.eps[i]));
                d / g
            })
            .collect();
        if m.iter().all(|&x| x == 1) {
            return (self.clone(), m);
        }
        let elems: Vec<Vec<u64>> = self
            .elements
            .iter()
            .map(|e| e.eps.iter().zip(&m).map(|(&x, &mi)| x * mi % d).collect())
            .collect();
        let reduced = GroupAction::from_elements(self.n, d, &elems).expect("image of a group is a group");
        (reduced, m)
    }
}

fn closure(n: usize, d_exp: u64, gens: &[Vec<u64>]) -> Vec<GroupElement> {
    let start = vec![0u64; n];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % d_exp).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<GroupElement> = seen.into_iter().map(|eps| GroupElement { eps, d_exp }).collect();
    out.sort();
    out
}

/// Parses `(d1,...,dr; a11,...,a1n; ...; ar1,...,arn)`.
pub fn parse_group_literal(s: &str) -> Result<GroupAction> {
    let bad = |msg: &str| Error::BadGroup(format!("{msg} in group literal {s:?}"));
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| bad("missing parentheses"))?;
    let sections: Vec<&str> = inner.split(';').collect();
    if sections.len() < 2 {
        return Err(bad("expected orders and at least one exponent row"));
    }
    let ints = |sec: &str| -> Result<Vec<i64>> {
        sec.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad(&format!("bad integer {:?}", t.trim()))))
            .collect()
    };
    let orders = ints(sections[0])?;
    if orders.iter().any(|&d| d <= 0) {
        return Err(bad("orders must be positive"));
    }
    let rows = sections[1..].iter().map(|sec| ints(sec)).collect::<Result<Vec<_>>>()?;
    GroupAction::new(orders.into_iter().map(|d| d as u64).collect(), rows)
}

impl fmt::Display for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}", join(&self.orders))?;
        for row in &self.matrix {
            write!(f, "; {}", join(row))?;
        }
        write!(f, ")")
    }
}

/// `sum k_i` for use with the weight relation `w(g) + age(g^-1) = sum k_i`.
pub fn total(k: &[Rat]) -> Rat {
    k.iter().fold(Rat::zero(), |a, b| a + b)
}
