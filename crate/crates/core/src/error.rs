use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not k-strict: {0}")]
    NotKStrict(String),
    #[error("not a partition: {0}")]
    NotPartition(String),
    #[error("unassigned variable {0}")]
    UnassignedVariable(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid pair set: {0}")]
    InvalidPairSet(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("rank too small: {0}")]
    RankTooSmall(String),
    #[error("not k-Grassmannian: {0}")]
    NotGrassmannian(String),
    #[error("not a signed permutation: {0}")]
    NotSignedPermutation(String),
    #[error("not a left descent: {0}")]
    NotLeftDescent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
