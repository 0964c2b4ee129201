//! Exact dense linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;

pub use matrix::{Echelon, KernelImage, Matrix};
pub use scalar::{Field, Scalar};
