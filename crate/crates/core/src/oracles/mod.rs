//! Independent reference computations.
//!
//! Everything here is brute force or exact optimization, deliberately
//! separate from the constructions it certifies: minrank by enumerating
//! fitting matrices, chromatic numbers by backtracking, the fractional
//! chromatic number by an exact LP, decodability by information-theoretic
//! exhaustion over all message vectors, covering radii by syndrome
//! breadth-first search, and the closed-form trade-off curves.

mod coloring;
mod decode;
mod minrank;
mod syndrome;
mod tradeoff;

pub use coloring::{ab_coloring, chromatic_number, fractional_chromatic, optimal_ab_coloring};
pub use decode::{exhaustive_decodability, min_queries_for_encoder};
pub use minrank::{
    enumerate_fittings, find_fitting_with_rank, fits, minrank_bruteforce, MinrankResult,
};
pub use syndrome::{covering_radius, SyndromeTable};
pub use tradeoff::{
    min_message_length_for_cycle_locality, reference_tradeoff, ReferenceFormula, TradeoffPoint,
};

use thiserror::Error;

/// Default enumeration budget (number of visited assignments).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration budget exceeded; best upper bound found: {upper_bound}")]
    BudgetExceeded { upper_bound: usize },
    #[error("instance too large for exhaustive computation: {0}")]
    TooLarge(String),
    #[error("encoder cannot serve receiver {receiver} even querying every symbol")]
    Undecodable { receiver: usize },
    #[error("unknown reference formula `{0}`")]
    UnknownFormula(String),
    #[error("parity-check matrix does not cover the whole syndrome space")]
    NoFiniteRadius,
}
