//! Exact computation of the constants relating Dirac index polynomials to
//! associated-cycle multiplicities for equal-rank real groups.
//!
//! The geometry is generic over [`Scalar`]; the aliases below fix the exact
//! rational instantiation used by the solver and the CLI.

pub mod catalog;
pub mod charlab;
pub mod error;
pub mod orbits;
pub mod rootdata;
pub mod scalar;
pub mod solver;
pub mod springer;

pub use error::{Error, Result};
pub use scalar::{Scalar, Q};

/// Exact weight.
pub type QWeight = rootdata::Weight<Q>;
/// Exact root system.
pub type QRootSystem = rootdata::RootSystem<Q>;
/// Exact real pair.
pub type QRealPair = rootdata::RealPair<Q>;
