use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("vertex sets differ: {0}")]
    VertexMismatch(String),

    #[error("matrix dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vertex matrices do not commute")]
    NonCommuting,

    #[error("integer overflow in path counting")]
    Overflow,

    #[error("degree ({m}, {n}) exceeds the configured bound m + n <= {max}")]
    SkeletonBound { m: u32, n: u32, max: u32 },

    #[error("permutation of size {got} does not act on {expected} vertices")]
    PermutationSize { expected: usize, got: usize },

    #[error("polynomial degree {degree} exceeds the saturation bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },

    #[error("budget exceeded: {needed} normal words needed, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("{0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
