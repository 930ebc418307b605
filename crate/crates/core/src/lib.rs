//! Finding two disjoint vertex sets of equal size that induce the same
//! number of edges.
//!
//! The crate offers exact oracles for small graphs, a randomized
//! constructive splitter for large ones, the balancing and probability tools
//! the splitter is built from, and seeded instance generators.

pub mod balance;
pub mod check;
pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod multigraph;
pub mod oracle;
pub mod probability;
pub mod splitter;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
