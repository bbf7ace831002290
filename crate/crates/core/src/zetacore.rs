//! Zeta functions of monomial divisors on quotient singularities, zeta
//! functions assembled from stratifications, and the measures of the arcs
//! at the origin of a quotient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::GroupAction;
use crate::rat::{fmt_rat, int, rat, Rat};
use crate::symring::{ChiEnv, Monomial, MotPoly, StdFactor, TopZeta, ZetaExpr};

/// What to do when a group contains reflections.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SmallPolicy {
    /// Refuse non-small groups.
    #[default]
    Require,
    /// Apply the same formula to a non-small group; the result is then the
    /// integral over the quotient presentation, not an intrinsic invariant.
    AllowNonSmall,
}

/// Data of one stratum: its class, the multiplicities `N`, `nu` and the local group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub klass: MotPoly,
    pub n_vec: Vec<Rat>,
    pub nu_vec: Vec<Rat>,
    pub group: GroupAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub n: usize,
    /// Gorenstein index: every exponent lives in `(1/r) Z`.
    pub r: u64,
    pub strata: Vec<Stratum>,
}

impl Stratum {
    pub fn new(klass: MotPoly, n_vec: Vec<Rat>, nu_vec: Vec<Rat>, group: GroupAction) -> Self {
        Stratum { klass, n_vec, nu_vec, group }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.n_vec.len() != n || self.nu_vec.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "stratum has {} N values and {} nu values in dimension {n}",
                self.n_vec.len(),
                self.nu_vec.len()
            )));
        }
        if self.group.dimension() != n {
            return Err(Error::DimensionMismatch(format!(
                "group {} acts in dimension {} but the ambient dimension is {n}",
                self.group,
                self.group.dimension()
            )));
        }
        if self.klass.has_t() {
            return Err(Error::BadParams(format!("stratum class {} contains T", self.klass)));
        }
        factors(&self.n_vec, &self.nu_vec).map(|_| ())
    }
}

impl Stratification {
    pub fn new(n: usize, r: u64, strata: Vec<Stratum>) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::BadParams("dimension and Gorenstein index must be positive".into()));
        }
        for s in &strata {
            s.validate(n)?;
        }
        Ok(Stratification { n, r, strata })
    }

    /// Entries whose denominators do not divide `r`, and groups whose order is
    /// not a divisor of a power of `r`.
    pub fn warnings(&self) -> Vec<String> {
        let r = BigInt::from(self.r);
        let mut out = Vec::new();
        for (i, s) in self.strata.iter().enumerate() {
            for x in s.n_vec.iter().chain(&s.nu_vec) {
                if !(&r % x.denom()).is_zero() {
                    out.push(format!("stratum {i}: {} has denominator not dividing r = {}", fmt_rat(x), self.r));
                }
            }
            let mut order = s.group.order() as u64;
            loop {
                let g = order.gcd(&self.r);
                if g == 1 {
                    break;
                }
                order /= g;
            }
            if order != 1 {
                out.push(format!("stratum {i}: group order {} does not divide a power of r", s.group.order()));
            }
        }
        out
    }
}

fn factors(n_vec: &[Rat], nu_vec: &[Rat]) -> Result<Vec<StdFactor>> {
    n_vec.iter().zip(nu_vec).map(|(n, nu)| StdFactor::new(n.clone(), nu.clone())).collect()
}

fn check_small(g: &GroupAction, policy: SmallPolicy) -> Result<()> {
    if policy == SmallPolicy::Require && !g.is_small() {
        return Err(Error::NotSmall(g.to_string()));
    }
    Ok(())
}

/// `S_G(N, nu; s) = sum_g L^{age_N(g) s + age_nu(g)} = sum_g L^{age_nu(g)} T^{-age_N(g)}`.
pub fn s_g_sum(g: &GroupAction, n_vec: &[Rat], nu_vec: &[Rat]) -> MotPoly {
    MotPoly::from_terms(
        g.elements()
            .iter()
            .map(|e| (Monomial::lt(e.age(nu_vec), -e.age(n_vec)), BigInt::one())),
    )
}

/// `S_G(N, nu; s) L^{-n} prod_i F(N_i, nu_i)`.
pub fn local_monomial_zeta(
    g: &GroupAction,
    n_vec: &[Rat],
    nu_vec: &[Rat],
    policy: SmallPolicy,
) -> Result<ZetaExpr> {
    let n = g.dimension();
    if n_vec.len() != n || nu_vec.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "group acts in dimension {n}, got {} N values and {} nu values",
            n_vec.len(),
            nu_vec.len()
        )));
    }
    check_small(g, policy)?;
    let fs = factors(n_vec, nu_vec)?;
    let coeff = s_g_sum(g, n_vec, nu_vec).mul_monomial(&Monomial::lt(-int(n as i64), Rat::zero()));
    Ok(ZetaExpr::term(coeff, fs))
}

/// `L^{-n} sum_k [Y_k] S_{G_k}(N_k, nu_k; s) prod_i F(N_ik, nu_ik)`.
pub fn stratified_zeta(s: &Stratification, policy: SmallPolicy) -> Result<ZetaExpr> {
    let shift = Monomial::lt(-int(s.n as i64), Rat::zero());
    let mut z = ZetaExpr::zero();
    for st in &s.strata {
        st.validate(s.n)?;
        check_small(&st.group, policy)?;
        let coeff = (&st.klass * &s_g_sum(&st.group, &st.n_vec, &st.nu_vec)).mul_monomial(&shift);
        z = &z + &ZetaExpr::term(coeff, factors(&st.n_vec, &st.nu_vec)?);
    }
    Ok(z)
}

/// Euler specialization predicted termwise: `sum_k chi(Y_k) |G_k| prod 1/(N_ik s + nu_ik)`.
pub fn top_from_strata(s: &Stratification, chi: &ChiEnv) -> Result<TopZeta> {
    let mut terms = Vec::new();
    for st in &s.strata {
        let c = st.klass.specialize_chi(chi)? * BigInt::from(st.group.order());
        terms.push((
            Rat::from_integer(c),
            st.n_vec.iter().cloned().zip(st.nu_vec.iter().cloned()).collect(),
        ));
    }
    Ok(TopZeta::from_terms(terms))
}

/// Gorenstein measure of the arcs at the origin: `sum_g L^{age_1(g) - n}` over the small reduction.
pub fn gor_measure_origin(g: &GroupAction) -> MotPoly {
    let (h, _) = g.small_reduce();
    let n = h.dimension();
    let ones = vec![Rat::one(); n];
    MotPoly::from_terms(h.elements().iter().map(|e| {
        (Monomial::lt(e.age(&ones) - int(n as i64), Rat::zero()), BigInt::one())
    }))
}

/// Orbifold measure of the arcs at the origin: `sum_g L^{-w_1(g)}`.
pub fn orb_measure_origin(g: &GroupAction) -> MotPoly {
    let ones = vec![Rat::one(); g.dimension()];
    MotPoly::from_terms(
        g.elements()
            .iter()
            .map(|e| (Monomial::lt(-e.weight(&ones), Rat::zero()), BigInt::one())),
    )
}

/// `L^{a s + b} = L^b T^{-a}`
fn l_pow_affine(a: Rat, b: Rat) -> MotPoly {
    MotPoly::monomial(1, Monomial::lt(b, -a))
}

/// The 3x3 determinant attached to the resolution chain of `1/7(1,3)`.
pub fn veys_det_713(n1: &Rat, n2: &Rat, nu1: &Rat, nu2: &Rat) -> MotPoly {
    let seventh = rat(1, 7);
    let b = |a1: i64, a2: i64| {
        l_pow_affine(
            (int(a1) * n1 + int(a2) * n2) * &seventh,
            (int(a1) * nu1 + int(a2) * nu2) * &seventh,
        )
    };
    let e1 = b(1, 3);
    let e2 = b(3, 2);
    let e3 = b(5, 1);
    let e0 = l_pow_affine(n2.clone(), nu2.clone());
    let e4 = l_pow_affine(n1.clone(), nu1.clone());
    let one = MotPoly::one();
    let k1 = &(&one + &e1) + &(&e1 * &e1);
    let k2 = &one + &e2;
    let k3 = &one + &e3;
    let m = [
        [k1, -&e3, &e2 - &one],
        [-&e0, k2, -&e1],
        [MotPoly::zero(), -&e4, k3],
    ];
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// Largest number of jet tuples the oracle will enumerate.
pub const JET_BUDGET: u128 = 100_000_000;

/// Brute-force measure of the jets at the origin with `sum N_i ord(x_i) = j`,
/// over `F_p`, normalized by `p^{-(j+1) n}`.
pub fn jet_count_oracle(n_vec: &[u64], p: u64, j: u32) -> Result<Rat> {
    if p < 2 {
        return Err(Error::BadParams(format!("p = {p} is not a prime")));
    }
    let n = n_vec.len();
    let m = j as usize;
    let digits = (m + 1) * n;
    let total = (p as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
    if total > JET_BUDGET {
        return Err(Error::BudgetExceeded(total));
    }
    let mut count: u64 = 0;
    let mut coeffs = vec![0u64; digits];
    for _ in 0..total {
        let mut sum = 0u64;
        let mut at_origin = true;
        for i in 0..n {
            let poly = &coeffs[i * (m + 1)..(i + 1) * (m + 1)];
            match poly.iter().position(|&c| c != 0) {
                Some(0) => at_origin = false,
                Some(o) => sum += n_vec[i] * o as u64,
                None => sum = u64::MAX / 2,
            }
        }
        if at_origin && sum == j as u64 {
            count += 1;
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    Ok(Rat::new(count.into(), BigInt::from(p).pow(digits as u32)))
}

/// True when every exponent and factor datum of `z` lies in `(1/r) Z`.
pub fn in_ring(z: &ZetaExpr, r: u64) -> bool {
    let r = BigInt::from(r);
    z.rationals().iter().all(|x| (&r % x.denom()).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::ChiEnv;
    use std::collections::BTreeMap;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn cyc(d: u64, a: &[i64]) -> GroupAction {
        GroupAction::cyclic(d, a.to_vec()).unwrap()
    }

    #[test]
    fn s_g_examples() {
        assert_eq!(s_g_sum(&GroupAction::trivial(2), &v(&[1, 1]), &v(&[1, 1])), MotPoly::one());
        let p = s_g_sum(&cyc(2, &[1, 1]), &v(&[0, 0]), &v(&[1, 1]));
        assert_eq!(p, &MotPoly::one() + &MotPoly::l());
        let g = cyc(7, &[1, 3]);
        let p = s_g_sum(&g, &v(&[1, 0]), &v(&[1, 1]));
        assert_eq!(p.len(), 7);
        assert_eq!(p.specialize_chi(&ChiEnv::new()).unwrap(), BigInt::from(7));
        // element i contributes L^{(i + 3i mod 7)/7} T^{-i/7}
        for i in 0..7i64 {
            let m = Monomial::lt(rat(i + (3 * i) % 7, 7), rat(-i, 7));
            assert!(p.terms().any(|(x, c)| x == &m && c.is_one()));
        }
    }

    #[test]
    fn local_zeta_examples() {
        let z = local_monomial_zeta(&GroupAction::trivial(1), &v(&[1]), &v(&[1]), SmallPolicy::Require).unwrap();
        let f = StdFactor::new(int(1), int(1)).unwrap();
        assert_eq!(z, ZetaExpr::term(MotPoly::l_pow(int(-1)), vec![f]));
        let z = local_monomial_zeta(&cyc(2, &[1, 1]), &v(&[0, 0]), &v(&[1, 1]), SmallPolicy::Require).unwrap();
        assert_eq!(z.to_string(), "L^-2 * (1 + L)");
        assert!(matches!(
            local_monomial_zeta(&cyc(4, &[1, 2]), &v(&[1, 1]), &v(&[1, 1]), SmallPolicy::Require),
            Err(Error::NotSmall(_))
        ));
        assert!(local_monomial_zeta(&cyc(4, &[1, 2]), &v(&[1, 1]), &v(&[1, 1]), SmallPolicy::AllowNonSmall).is_ok());
    }

    #[test]
    fn ratfunc_of_half_turn() {
        let z = local_monomial_zeta(&cyc(2, &[1, 1]), &v(&[1, 1]), &v(&[1, 1]), SmallPolicy::Require).unwrap();
        let rf = z.cross_multiply();
        let f = StdFactor::new(int(1), int(1)).unwrap();
        let sg = &MotPoly::one() + &MotPoly::monomial(1, Monomial::lt(int(1), int(-1)));
        let expect = &(&sg * &MotPoly::l_pow(int(-2))) * &f.numerator().pow(2);
        assert_eq!(rf.numer, expect);
        assert_eq!(rf.denom.get(&f), Some(&2));
    }

    #[test]
    fn measures() {
        let target = (&MotPoly::one() + &MotPoly::l()).mul_monomial(&Monomial::lt(int(-2), int(0)));
        assert_eq!(gor_measure_origin(&cyc(2, &[1, 1])), target);
        assert_eq!(gor_measure_origin(&cyc(4, &[1, 2])), target);
        assert_eq!(gor_measure_origin(&GroupAction::trivial(2)), MotPoly::l_pow(int(-2)));
        assert_eq!(
            orb_measure_origin(&cyc(2, &[1, 1])),
            &MotPoly::l_pow(int(-2)) + &MotPoly::l_pow(int(-1))
        );
        let orb = orb_measure_origin(&cyc(4, &[1, 2]));
        let expect = [int(-2), rat(-3, 4), rat(-3, 2), rat(-5, 4)]
            .into_iter()
            .fold(MotPoly::zero(), |acc, e| &acc + &MotPoly::l_pow(e));
        assert_eq!(orb, expect);
    }

    #[test]
    fn veys_matches_group_sum() {
        let g = cyc(7, &[1, 3]);
        for (a, b, c, d) in [(1, 1, 1, 1), (0, 0, 1, 1), (2, 5, 3, 1), (0, 3, 2, 7)] {
            let (n1, n2, nu1, nu2) = (int(a), int(b), int(c), int(d));
            assert_eq!(veys_det_713(&n1, &n2, &nu1, &nu2), s_g_sum(&g, &[n1.clone(), n2.clone()], &[nu1.clone(), nu2.clone()]));
        }
        let det = veys_det_713(&int(0), &int(0), &int(1), &int(1));
        assert_eq!(det.specialize_chi(&ChiEnv::new()).unwrap(), BigInt::from(7));
    }

    #[test]
    fn jet_examples() {
        assert_eq!(jet_count_oracle(&[1], 2, 1).unwrap(), rat(1, 4));
        assert_eq!(jet_count_oracle(&[1], 2, 0).unwrap(), int(0));
        assert_eq!(jet_count_oracle(&[1, 1], 2, 1).unwrap(), int(0));
        assert_eq!(jet_count_oracle(&[1, 1], 2, 2).unwrap(), rat(1, 16));
        assert!(matches!(jet_count_oracle(&[1, 1], 3, 20), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn jets_match_series_coefficient() {
        let env = BTreeMap::new();
        for n_vec in [vec![1u64], vec![2], vec![1, 2]] {
            let ns: Vec<Rat> = n_vec.iter().map(|&x| int(x as i64)).collect();
            let z = local_monomial_zeta(&GroupAction::trivial(ns.len()), &ns, &vec![int(1); ns.len()], SmallPolicy::Require).unwrap();
            let series = z.series(&int(3)).unwrap();
            for j in 0..=3u32 {
                let c = series.coefficient_of_t(&int(j as i64)).eval_l(&int(2), &env).unwrap();
                assert_eq!(jet_count_oracle(&n_vec, 2, j).unwrap(), c, "N = {n_vec:?}, j = {j}");
            }
        }
    }

    #[test]
    fn stratification_validation() {
        let st = Stratum::new(MotPoly::one(), v(&[1]), v(&[1, 1]), GroupAction::trivial(2));
        assert!(matches!(Stratification::new(2, 1, vec![st]), Err(Error::DimensionMismatch(_))));
        let st = Stratum::new(MotPoly::one(), v(&[1, 0]), v(&[1, 1]), GroupAction::trivial(3));
        assert!(matches!(Stratification::new(2, 1, vec![st]), Err(Error::DimensionMismatch(_))));
        let st = Stratum::new(MotPoly::one(), vec![rat(1, 2)], v(&[1]), GroupAction::trivial(1));
        let s = Stratification::new(1, 3, vec![st]).unwrap();
        assert_eq!(s.warnings().len(), 1);
    }

    #[test]
    fn single_trivial_stratum_is_local_zeta() {
        let st = Stratum::new(MotPoly::one(), v(&[1]), v(&[1]), GroupAction::trivial(1));
        let s = Stratification::new(1, 1, vec![st]).unwrap();
        let a = stratified_zeta(&s, SmallPolicy::Require).unwrap();
        let b = local_monomial_zeta(&GroupAction::trivial(1), &v(&[1]), &v(&[1]), SmallPolicy::Require).unwrap();
        assert_eq!(a, b);
        assert!(in_ring(&a, 1));
    }
}
