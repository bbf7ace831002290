//! Motivic and topological zeta functions of monomial divisors on abelian
//! quotient singularities and on stratified embedded resolutions.

pub mod cli;
pub mod error;
pub mod groups;
pub mod monodromy;
pub mod rat;
pub mod resolution;
pub mod strata_file;
pub mod tetra;
pub mod zetacore;
pub mod symring;

pub use error::{Error, Result};
pub use rat::Rat;
