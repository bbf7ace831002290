//! Exact arithmetic with Laurent polynomials in `L` and `T`, standard
//! factors, their rational-function forms and Euler specializations.

pub mod motpoly;
pub mod render;
pub mod topzeta;
pub mod zeta;

pub use motpoly::{exponent_lcm, ChiEnv, ClassSymbol, Monomial, MotPoly, SymMono};
pub use topzeta::{TopTerm, TopZeta, UPoly};
pub use zeta::{DenomSet, RatFunc, StdFactor, ZetaExpr};
