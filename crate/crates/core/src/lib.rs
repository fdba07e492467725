//! Finite-precision p-adic linear algebra: zealous scalars, matrix
//! decompositions, and block Schur forms via trace-shifted QR iteration.

pub mod bench;
pub mod decomp;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod padic;
pub mod residue;

pub use error::{PadicError, Result};
pub use padic::{PadicContext, PadicPoly, PadicScalar};
