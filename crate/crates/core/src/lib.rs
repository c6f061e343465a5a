//! Rank-2 graph triples `(G1, G2, θ)` and their quantum automorphism group
//! presentations.

pub mod analyzer;
pub mod composition;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod json;
pub mod ncalgebra;
pub mod presentation;
pub mod random;

pub use error::{Error, Result};
