//! Structural analysis and exact equilibrium parametrization of (generalized)
//! chemical reaction networks.
//!
//! The crate models reaction networks as directed graphs whose vertices carry
//! stoichiometric and kinetic-order complexes, computes their deficiencies and
//! condensed forms, translates classical networks into generalized ones, and
//! constructs exact symbolic positive parametrizations of the complex-balanced
//! equilibrium set from tree constants and integer linear algebra. All
//! symbolic computation is over exact rationals; floating point appears only
//! in the seeded numeric verification harness.

pub mod algebra;
pub mod error;
pub mod model;
pub mod param;
pub mod parse;
pub mod translate;
pub mod trees;
pub mod verify;

pub use error::Error;
