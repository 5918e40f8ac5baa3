//! Exact symbolic and linear algebra: rationals, sparse multivariate
//! polynomials, rational functions, and dense rational matrices.

pub mod matrix;
pub mod poly;
pub mod ratfun;

pub use matrix::{RationalMatrix, RrefResult};
pub use poly::{rat, ratio, Monomial, Polynomial, Rat};
pub use ratfun::RationalFunction;
