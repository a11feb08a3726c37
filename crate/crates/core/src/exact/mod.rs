//! Exact Gaussian-rational arithmetic and the algebraic determinant/inverse used as the
//! reference for every combinatorial formula in this crate. No floating point is involved.

mod gaussian;
mod matrix;

pub use gaussian::{GaussianInteger, GaussianRational, ParseGaussianError, Rational, Unit};
pub use matrix::{det_exact, inverse_exact, principal_minor, HermitianMatrix, Matrix};
