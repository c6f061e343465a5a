//! Exact noncommutative polynomial arithmetic and a bounded-degree ideal
//! membership engine.
//!
//! The engine is sound but incomplete: "proved" is always correct, while
//! "not provable at this bound" says nothing about whether the element is
//! actually in the ideal. In particular an inconclusive commutativity check
//! is not evidence of genuine quantum symmetry.

mod coeff;
mod poly;
mod rules;
mod saturation;

pub use poly::{Generator, NcPoly, Word};
pub use rules::{Letter, MonomialRules};
pub use saturation::{
    saturate, CommutativityResult, EntryMap, Membership, Saturation, SaturationConfig, SaturationDump,
    DEFAULT_DEGREE_BOUND, DEFAULT_WORD_BUDGET,
};
