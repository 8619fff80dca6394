use thiserror::Error;

/// Errors produced by the kernel.
///
/// Verification failures are never reported through this type; suites return
/// them as data in a [`crate::report::Report`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("root datum must have rank at least 1")]
    ZeroRank,
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight has {got} coordinates but the datum has rank {expected}")]
    WeightArity { expected: usize, got: usize },
    #[error("operands belong to different root data ({0} vs {1})")]
    DatumMismatch(String, String),
    #[error("K-class mixes atoms from both sides")]
    MixedSide,
    #[error("K-class is on the wrong side: expected {expected}")]
    WrongSide { expected: &'static str },
    #[error("internal-degree window too small: module known up to q = {have}, need q = {need}")]
    WindowTooSmall { have: i32, need: i32 },
    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("`^-1` (or a negative power) applied to a non-invertible factor at position {pos}")]
    NotInvertible { pos: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

pub type Result<T> = std::result::Result<T, Error>;
