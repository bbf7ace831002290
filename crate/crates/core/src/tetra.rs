//! The groups `G_{d,q}` generated by the cyclic permutation matrix `B` and
//! the diagonal matrices `D_{i,j,k} = diag(xi^{jq+k}, xi^{i+kq}, xi^{iq+j})`,
//! with `xi` a primitive `d`-th root of unity.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Largest group order accepted by [`TetraGroup::build`].
pub const ORDER_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TetraParams {
    pub d: u64,
    pub q: u64,
    /// `gcd(d, q^3 + 1)`
    pub d_prime: u64,
    /// `gcd(d, q + 1)`
    pub alpha: u64,
    /// `gcd(d, q^2 - q + 1)`
    pub beta: u64,
}

impl TetraParams {
    pub fn new(d: u64, q: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadParams("d must be positive".into()));
        }
        if q >= d.max(1) && !(d == 1 && q == 0) {
            return Err(Error::BadParams(format!("q = {q} must satisfy 0 <= q < d = {d}")));
        }
        if d.gcd(&q) != 1 {
            return Err(Error::NotCoprime { d: d as i64, x: q as i64 });
        }
        let q = q as u128;
        let dd = d as u128;
        let d_prime = dd.gcd(&(q * q * q + 1)) as u64;
        let alpha = dd.gcd(&(q + 1)) as u64;
        let beta = dd.gcd(&(q * q - q + 1)) as u64;
        Ok(TetraParams { d, q: q as u64, d_prime, alpha, beta })
    }

    /// `d | q^3 + 1`
    pub fn is_small(&self) -> bool {
        self.d_prime == self.d
    }

    /// `alpha * beta / d`, defined when the group is small.
    pub fn gamma(&self) -> Option<u64> {
        self.is_small().then(|| self.alpha * self.beta / self.d)
    }

    /// Parameters of the small group `G_{d', q mod d'}`.
    pub fn reduced(&self) -> TetraParams {
        TetraParams::new(self.d_prime, self.q % self.d_prime).expect("d' divides d, so q stays coprime")
    }

    pub fn expected_order(&self) -> u64 {
        3 * self.d * self.d * self.d / self.d_prime
    }
}

/// `(d^2 + 8 beta) / 3`
pub fn stringy_euler_tetra(p: &TetraParams) -> Result<Rat> {
    if !p.is_small() {
        return Err(Error::NotSmall(format!("G_{{{},{}}}: d does not divide q^3 + 1", p.d, p.q)));
    }
    let v = Rat::new((p.d * p.d + 8 * p.beta).into(), 3u64.into());
    assert!(v.is_integer(), "stringy Euler number is an integer");
    Ok(v)
}

/// A monomial matrix `M e_k = xi^{x_k} e_{sigma^s(k)}` with `sigma = (0 2 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TetraElement {
    pub shift: u8,
    pub x: [u64; 3],
}

const SIGMA: [usize; 3] = [2, 0, 1];

fn sigma_pow(s: u8, k: usize) -> usize {
    (0..s).fold(k, |acc, _| SIGMA[acc])
}

impl TetraElement {
    pub fn mul(&self, other: &TetraElement, d: u64) -> TetraElement {
        let mut x = [0u64; 3];
        for (k, slot) in x.iter_mut().enumerate() {
            *slot = (other.x[k] + self.x[sigma_pow(other.shift, k)]) % d;
        }
        TetraElement { shift: (self.shift + other.shift) % 3, x }
    }

    pub fn inverse(&self, d: u64) -> TetraElement {
        let inv = (3 - self.shift) % 3;
        let mut x = [0u64; 3];
        for (k, slot) in x.iter_mut().enumerate() {
            *slot = (d - self.x[sigma_pow(inv, k)]) % d;
        }
        TetraElement { shift: inv, x }
    }

    /// Multiplicity of the eigenvalue 1. A 3-cycle monomial matrix has the three
    /// cube roots of `xi^{x0+x1+x2}` as eigenvalues, so it never exceeds one there.
    pub fn fixed_dimension(&self, d: u64) -> usize {
        if self.shift == 0 {
            self.x.iter().filter(|&&v| v == 0).count()
        } else {
            usize::from(self.x.iter().sum::<u64>() % d == 0)
        }
    }
}

#[derive(Clone, Debug)]
pub struct TetraGroup {
    params: TetraParams,
    elements: Vec<TetraElement>,
}

impl TetraGroup {
    pub fn build(d: u64, q: u64) -> Result<Self> {
        let params = TetraParams::new(d, q)?;
        let order = params.expected_order();
        if order > ORDER_LIMIT {
            return Err(Error::SizeLimit(order));
        }
        let mut diag: HashSet<[u64; 3]> = HashSet::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    diag.insert([(j * q + k) % d, (i + k * q) % d, (i * q + j) % d]);
                }
            }
        }
        let mut elements: Vec<TetraElement> = (0..3u8)
            .flat_map(|shift| diag.iter().map(move |&x| TetraElement { shift, x }))
            .collect();
        elements.sort();
        assert_eq!(elements.len() as u64, order, "|G| = 3 d^3 / gcd(d, q^3 + 1)");
        Ok(TetraGroup { params, elements })
    }

    pub fn params(&self) -> &TetraParams {
        &self.params
    }

    pub fn elements(&self) -> &[TetraElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Divisibility criterion `d | q^3 + 1`.
    pub fn is_small(&self) -> bool {
        self.params.is_small()
    }

    /// Scan for elements with eigenvalue 1 of multiplicity exactly 2.
    pub fn scan_small(&self) -> bool {
        self.elements.iter().all(|g| g.fixed_dimension(self.params.d) != 2)
    }

    fn generators(&self) -> Vec<TetraElement> {
        let d = self.params.d;
        let q = self.params.q;
        let mut g = vec![TetraElement { shift: 1, x: [0; 3] }];
        for (i, j, k) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
            g.push(TetraElement { shift: 0, x: [(j * q + k) % d, (i + k * q) % d, (i * q + j) % d] });
        }
        g
    }

    /// Number of conjugacy classes, as orbits under conjugation by generators.
    pub fn conjugacy_count(&self) -> usize {
        let d = self.params.d;
        let gens: Vec<(TetraElement, TetraElement)> =
            self.generators().into_iter().map(|g| (g, g.inverse(d))).collect();
        let index: HashMap<TetraElement, usize> =
            self.elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut seen = vec![false; self.elements.len()];
        let mut classes = 0;
        for start in 0..self.elements.len() {
            if seen[start] {
                continue;
            }
            classes += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([self.elements[start]]);
            while let Some(x) = queue.pop_front() {
                for (g, gi) in &gens {
                    let y = g.mul(&x, d).mul(gi, d);
                    let idx = index[&y];
                    if !seen[idx] {
                        seen[idx] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        classes
    }

    /// Closure under products and inverses over the full element list.
    pub fn check_axioms(&self) -> bool {
        let d = self.params.d;
        let set: HashSet<&TetraElement> = self.elements.iter().collect();
        self.elements.iter().all(|a| {
            set.contains(&a.inverse(d)) && self.elements.iter().all(|b| set.contains(&a.mul(b, d)))
        })
    }
}
