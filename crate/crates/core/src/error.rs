use thiserror::Error;

use crate::exact::Int;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rank zero bundle has no slope")]
    ZeroRank,

    #[error("divisor classes live on different lattices: {left} vs {right}")]
    LatticeMismatch { left: String, right: String },

    #[error("non-integral genus: c.(c+K) = {pairing} is odd")]
    NonIntegralGenus { pairing: Int },

    #[error("lattice {0} does not support adjunction (no surface self-pairing)")]
    AdjunctionUnsupported(String),

    #[error("graded map entry ({row},{col}) has degree {found}, expected {expected}")]
    EntryDegreeMismatch {
        row: usize,
        col: usize,
        expected: i64,
        found: i64,
    },

    #[error("cokernel has torsion or positive rank; kernel splitting refused")]
    NotSurjective,

    #[error("map is not injective; cokernel splitting refused")]
    NotInjective,

    #[error("cokernel has torsion; cokernel splitting refused")]
    TorsionCokernel,

    #[error("subspace dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("case analysis gap at g={g}: candidate r={r}, a=({a1},{a2},{a3})")]
    CaseAnalysisGap {
        g: u32,
        r: u32,
        a1: u32,
        a2: u32,
        a3: u32,
    },

    #[error("bookkeeping mismatch: {0}")]
    Bookkeeping(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn bookkeeping(msg: impl Into<String>) -> Self {
        Error::Bookkeeping(msg.into())
    }
}
