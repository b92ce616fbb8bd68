use thiserror::Error;

/// Errors surfaced by the group, geometry and enumeration routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("resource cap `{cap}` exceeded (limit {limit})")]
    CapExceeded { cap: &'static str, limit: u64 },

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("tuple length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range for rank {rank}")]
    RankOutOfRange { index: usize, rank: usize },

    #[error("string relations fail: {0}")]
    RelationsFail(String),

    #[error("mix precondition failed: {0}")]
    MixPrecondition(String),

    #[error("coset enumeration overflow: more than {max_cosets} cosets")]
    CosetOverflow { max_cosets: usize },

    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a resource limit rather than a failed claim.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::CosetOverflow { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
