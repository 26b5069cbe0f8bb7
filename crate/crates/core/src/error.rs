use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} is out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("rank {0} is not supported (need 2 <= rank <= 64)")]
    InvalidRank(usize),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid tau index pair ({i}, {j}) for rank {rank}")]
    InvalidTau { i: usize, j: usize, rank: usize },

    #[error("EnumerationOverflow: coset enumeration exceeded the limit of {limit} cosets")]
    EnumerationOverflow { limit: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("oracle budget exceeded: group order {order} is above the budget of {budget}")]
    BudgetExceeded { order: usize, budget: usize },

    #[error("input rotation system is directly regular, not chiral")]
    NotChiral,

    #[error("invalid torus map: {0}")]
    InvalidTorusMap(String),

    #[error("unknown catalog name {0:?}")]
    UnknownName(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn is_overflow(&self) -> bool {
        matches!(self, Error::EnumerationOverflow { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
