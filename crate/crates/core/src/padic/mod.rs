pub mod counter;
pub mod poly;
pub mod scalar;

pub use poly::PadicPoly;
pub use scalar::{is_prime, Norm, PadicContext, PadicScalar, Valuation, EXACT};
