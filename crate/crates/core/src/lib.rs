//! Exact lattice-point generating functions: short rational functions,
//! Barvinok's signed cone decomposition, lattice-point counting, Ehrhart and
//! Hilbert series, and degree-bounded toric binomial encodings.

pub mod arith;
pub mod cone;
mod error;
pub mod genfun;
pub mod polytope;
pub mod series;
pub mod toric;

pub use error::{Error, Result};
