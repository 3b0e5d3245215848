//! Exact construction and certification of equiangular tight frames arising
//! from primitive rank 3 strongly regular graphs.
//!
//! Everything here works in exact arithmetic: rationals and real quadratic
//! extensions `Q(√D)`. Graphs are built over small finite fields, their
//! spectral data is derived from `(v, k, λ, μ)`, and frame properties are
//! certified by matrix identities rather than numerics.
#![no_std]
extern crate alloc;

use alloc::string::String;

pub mod algebra;
pub mod constructions;
pub mod etf;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod iso;
pub mod spectrum;
pub mod two_graph;

pub use algebra::{mat_mul, mat_rank, AlgebraError, ExactMatrix, QuadExt};
pub use constructions::{build, Family, FamilySpec};
pub use etf::{EtfCertificate, EtfStatus, GramMatrix};
pub use field::FieldSpec;
pub use graph::Graph;
pub use spectrum::{Eigenmatrices, SrgParams, Spectrum};
pub use two_graph::TwoGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field GF({p}^{e})")]
    InvalidField { p: u32, e: u32 },
    #[error("invalid quadratic form: {0}")]
    InvalidForm(&'static str),
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("{what}: size {size} exceeds limit {limit}")]
    BoundExceeded { what: &'static str, size: u64, limit: u64 },
    #[error("not strongly regular: vertices {0} and {1} violate A² = kI + λA + μĀ")]
    NotStronglyRegular(usize, usize),
    #[error("parameters {0} are not primitive")]
    NotPrimitive(SrgParams),
    #[error("parameters {0} are infeasible: {1}")]
    Infeasible(SrgParams, &'static str),
    #[error("not isomorphic: {0}")]
    NotIsomorphic(&'static str),
    #[error("{family} out of range: {reason}")]
    OutOfRange { family: &'static str, reason: String },
    #[error("{family}: expected {expected}, built {found}")]
    ParameterMismatch { family: &'static str, expected: SrgParams, found: SrgParams },
    #[error("Gram matrix is not a certified ETF")]
    NotEtf,
    #[error("descendant Gram needs k = 2μ, got {0}")]
    NotDescendantSource(SrgParams),
    #[error("two-graph is not regular: pair ({0}, {1})")]
    NotRegular(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("internal error: {0}")]
    Internal(&'static str),
}

/// Size guards shared by the builders and the search routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_ambient_vectors: u64,
    pub max_vertices: usize,
    pub max_iso_vertices: usize,
    pub max_switching_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_ambient_vectors: geometry::DEFAULT_MAX_AMBIENT,
            max_vertices: 2500,
            max_iso_vertices: 300,
            max_switching_vertices: 140,
        }
    }
}

impl Limits {
    /// Raises every vertex bound to `n`.
    pub fn with_max_vertices(n: usize) -> Self {
        Self {
            max_vertices: n,
            max_iso_vertices: n,
            max_switching_vertices: n,
            ..Self::default()
        }
    }
}
