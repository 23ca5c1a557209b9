use thiserror::Error;

use crate::arith::Integer;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not have full row rank (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("lattice basis rows are linearly dependent")]
    DependentRows,

    #[error("lattice is zero-dimensional")]
    ZeroDimensional,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("direction is orthogonal to a denominator exponent; choose a new generic direction")]
    NonGenericDirection,

    #[error("monomial substitution collapses denominator {exponent:?} of term {term}")]
    CollapsedDenominator { term: usize, exponent: Vec<i64> },

    #[error("poles do not cancel: the encoded set is not finite")]
    NonSummable,

    #[error("the encoded set is empty")]
    EmptySet,

    #[error("the encoded set has exponents with negative coordinates")]
    NegativeExponent,

    #[error("the function is not a single monomial")]
    NotMonomial,

    #[error("cone is not pointed")]
    NotPointed,

    #[error("object is not full-dimensional (dimension {dim} in ambient {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("cone is not simplicial")]
    NotSimplicial,

    #[error("generator matrix is not unimodular (|det| = {0})")]
    NotUnimodular(Integer),

    #[error("polyhedron is unbounded along ray {ray:?}")]
    Unbounded { ray: Vec<Integer> },

    #[error("point is not a vertex of the polyhedron")]
    NotAVertex,

    #[error("grading is not positive on the cone")]
    NonPositiveGrading,

    #[error("auxiliary recession cone is not pointed; operands are not sign-normalized to a common direction")]
    NotCommonlyNormalized,

    #[error("exponent overflow")]
    Overflow,

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
