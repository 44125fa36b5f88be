//! Exact arithmetic kernel: model variables, sparse integer polynomials and
//! rational matrices.

mod matrix;
mod poly;
mod var;

pub use matrix::RationalMatrix;
pub use poly::{poly_determinant, sigma_minor, Monomial, Poly};
pub use var::{Var, VarKind, MAX_INDEX};

/// Arbitrary-precision rational, re-exported for convenience.
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("no image given for {0}")]
    UnmappedSigma(Var),
    #[error("{0} is not a covariance variable")]
    NonSigmaVariable(Var),
    #[error("no value assigned to {0}")]
    UnassignedVariable(Var),
}
