//! Finds copies of a spanning forest `F` in a ±1-labeled complete graph
//! `K_n` whose label sum is small in absolute value.
//!
//! The engine is [`cond_expect`]: the exact mean copy sum over all
//! embeddings that extend a partial assignment, maintained incrementally as
//! vertices are placed. [`embed`] drives it greedily or monotonically and
//! walks between copies by transpositions; [`local_search`] improves copies of
//! arbitrary subgraphs by role swaps; [`oracle`] enumerates all `n!`
//! embeddings for small `n`.
//!
//! The library API uses 0-based vertices `0..n`. Files, JSON and the command
//! line use 1-based vertices.

pub mod cli;
pub mod cond_expect;
pub mod embed;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod local_search;
pub mod oracle;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
pub use exact::ExactValue;
