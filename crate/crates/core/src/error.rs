use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("gram matrix is degenerate")]
    Degenerate,

    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,

    #[error("invalid ADE type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("vector is not a root (square {square}, expected -2)")]
    NotARoot { square: i64 },

    #[error("vector is not in the dual lattice")]
    NotInDual,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid hyperbolic plane: {0}")]
    InvalidPlane(String),

    #[error("vector is outside the closed positive cone")]
    OutsidePositiveCone,

    #[error("isometry does not preserve the positive cone component")]
    NotInOPlus,

    #[error("isometry is not in the 2-congruence subgroup")]
    NotInG0,

    #[error("not a half-fiber class: {0}")]
    NotHalfFiber(&'static str),

    #[error("reduced matrix does not preserve the quadratic form mod 2")]
    NotF2Isometry,

    #[error("iteration cap of {0} steps exceeded")]
    IterationCap(usize),

    #[error("only {found} of {requested} hyperbolic planes found within bound {bound}")]
    InsufficientPlanes { requested: usize, found: usize, bound: i64 },

    #[error("no valid root pair found after {0} attempts")]
    NoRootPair(usize),

    #[error("integer overflow")]
    Overflow,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;
