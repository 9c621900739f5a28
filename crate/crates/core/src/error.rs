//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A chart transition sent the point outside the big cell
    /// (the matrix `A + BX` is singular).
    #[error("point leaves the big chart: A + BX is singular")]
    ChartEscape,

    #[error("matrix is singular")]
    Singular,

    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),

    /// Two points with the same fingerprint evaluated to different bivector
    /// ranks. This indicates a broken invariant, never an input problem.
    #[error("fingerprint class has inconsistent bivector rank ({left} vs {right})")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
