//! Exact scalar and matrix arithmetic over `Q` and real quadratic fields.

mod matrix;
mod quad;

use alloc::string::String;

pub use matrix::{mat_mul, mat_rank, ExactMatrix};
pub use quad::{is_squarefree, squarefree_decompose, QuadExt};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("incompatible radicands sqrt({left}) and sqrt({right})")]
    IncompatibleRadicand { left: u64, right: u64 },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar {0:?}")]
    Parse(String),
}
