//! Dense complex tensor primitives: Kronecker products, site embedding,
//! leg permutations, local operator application and small linear algebra.

mod linalg;
mod local;
mod matrix;
mod ops;

pub use linalg::{determinant, eigenvalues, invert, numerical_rank, span_residual};
pub use local::{apply_left, apply_right, embed_legs, partial_transpose};
pub use matrix::{c, CMatrix, C64};
pub use ops::{
    comm_residual, embed, eq_residual, kron, kron_all, leg_permute, permutation, q_comm,
    scalar_fit, SiteLayout,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("{op}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: matrix must be square, got {dims:?}")]
    NotSquare {
        op: &'static str,
        dims: (usize, usize),
    },
    #[error("site range {first}..{first}+{span} does not fit in {num_sites} sites")]
    SiteOutOfRange {
        first: usize,
        span: usize,
        num_sites: usize,
    },
    #[error("{0:?} is not a permutation of 1..={len}", len = .0.len())]
    NotAPermutation(Vec<usize>),
    #[error("matrix is numerically singular: pivot {pivot:.3e} at column {column} (row scale {scale:.3e})")]
    Singular {
        column: usize,
        pivot: f64,
        scale: f64,
    },
    #[error("scalar_fit: reference matrix is zero")]
    ZeroReference,
    #[error("eigenvalues: dimension {0} exceeds the supported maximum of 4096")]
    TooLarge(usize),
    #[error("eigenvalues: QR iteration did not converge")]
    NoConvergence,
}
