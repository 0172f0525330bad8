//! Root systems, real pairs and Weyl dimension polynomials.

pub mod dynkin;
mod pair;
mod system;
mod weight;

pub use pair::{RealPair, WeylDimPoly};
pub use system::{build_root_system, LieType, Root, RootSystem};
pub use weight::Weight;
