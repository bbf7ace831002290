//! Builders turning resolution data into stratifications: Hirzebruch-Jung
//! chains of cyclic surface quotients, and the tabulated strata of the
//! Yomdin-type surfaces and of the tetrahedral quotients.

pub mod hj;
pub mod tetra;
pub mod yomdin;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::symring::ChiEnv;
use crate::zetacore::{Stratification, Stratum};

pub use hj::{hj_resolve, hj_stratification, Chain2D};
pub use tetra::{tetra_s_g2_printed, tetra_stratification, tetra_top_closed_form, tetra_zeta_printed};
pub use yomdin::{
    yomdin_stratification, yomdin_top, yomdin_top_closed_form, yomdin_zeta, yomdin_zeta_printed,
    YomdinParams,
};

/// A generated stratification with the Euler characteristics of its symbols.
#[derive(Clone, Debug)]
pub struct Generated {
    pub strata: Stratification,
    pub chi: ChiEnv,
    /// Human-readable remarks such as automatic reductions.
    pub notices: Vec<String>,
}

/// Least common multiple of all group exponents and data denominators.
pub(crate) fn gorenstein_index(strata: &[Stratum]) -> u64 {
    strata.iter().fold(1u64, |acc, s| {
        let dens = s
            .n_vec
            .iter()
            .chain(&s.nu_vec)
            .fold(1u64, |a, x| a.lcm(&x.denom().to_u64().expect("small denominator")));
        acc.lcm(&s.group.d_exp()).lcm(&dens)
    })
}
