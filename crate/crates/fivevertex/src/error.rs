//! Library-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero value for parameter `{0}` is not allowed")]
    ZeroParameter(&'static str),

    #[error("rapidities must have pairwise distinct squares (u_{i} and u_{j} collide)")]
    CoincidentRapidities { i: usize, j: usize },

    #[error("size budget exceeded: {count} configurations, budget {budget}")]
    SizeBudget { count: u128, budget: u128 },

    #[error("quantum space dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("pole input: {0}")]
    PoleInput(String),

    #[error("hypergeometric series does not terminate (no nonpositive integer among the upper parameters)")]
    NonTerminating,

    #[error("lower hypergeometric parameter hits a nonpositive integer before termination: ({c})_{k} = 0")]
    PochhammerZero { c: String, k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
