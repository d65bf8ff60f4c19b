use thiserror::Error;

use crate::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator f{index} exceeds rank {rank}")]
    RankViolation { index: u32, rank: u32 },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("cannot embed rank {from} into smaller rank {to}")]
    Narrowing { from: u32, to: u32 },

    #[error("invalid generator index: {0}")]
    BadLetter(i64),

    #[error("invalid Nielsen generator L({i},{j}) in rank {rank}")]
    IndexViolation { i: u32, j: u32, rank: u32 },

    #[error("exponent must be +1 or -1, got {0}")]
    BadExponent(i64),

    #[error("unbound generator name `{0}`")]
    UnboundName(String),

    #[error("generator L({i},{j}) is not one of L(3,1), L(3,2), L(2,1)")]
    DisallowedGenerator { i: u32, j: u32 },

    #[error("{0}")]
    Domain(&'static str),

    #[error("expected {expected} image(s), got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("expression of kind {found} cannot be evaluated as {expected}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
}
