//! Exact computations for quadratic algebras with a Heisenberg group action.

mod error;
pub mod clifford;
pub mod exactfield;
pub mod groebner;
pub mod heisenberg;
pub mod hilbert;
pub mod linalg;
pub mod moduli;
pub mod multipoly;
pub mod quad_algebra;

pub use error::{Error, Result};
