use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant polynomial")]
    ConstantPolynomial,

    #[error("majorant not nonnegative (min R = {min:e})")]
    NotNonnegative { min: f64 },

    #[error("factorization failed: odd boundary multiplicity")]
    OddBoundaryMultiplicity,

    #[error("construction failed validation: {0}")]
    ConstructionFailed(String),

    #[error("not a snake: {0}")]
    NotASnake(String),

    #[error("boundary-degenerate majorant: pointwise oracle unavailable")]
    BoundaryDegenerate,

    #[error("instance too large for enumeration (n = {0}, limit 12)")]
    TooLarge(usize),

    #[error("parity condition violated: {0}")]
    Parity(String),

    #[error("catalog constraint violated: {0}")]
    Catalog(String),

    #[error("t must be a node (|omega(t)| = {0:e})")]
    NotANode(f64),

    #[error("use symmetry τ(x,t) = ±τ(−x,−t) first (x = {0})")]
    NegativeX(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
