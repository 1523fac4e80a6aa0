//! Random motif graphs: the union of random copies of a fixed small graph
//! `H` inside `K_n`.
//!
//! The crate covers the binomial model `G(H, n, p)`, the uniform model
//! `G(H, n, m)` and the motif process, exact decision procedures for
//! connectivity, perfect matching, Hamiltonicity and subgraph containment,
//! hitting-time tracking along the process, and the covering exponent that
//! governs when a fixed subgraph appears.

pub mod combin;
pub mod covering;
pub mod error;
pub mod graph;
pub mod harness;
pub mod hitting;
pub mod motif;
pub mod multigraph;
pub mod properties;
pub mod sampler;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use motif::{CopyIndex, CopySpace, Edge, Motif};
pub use multigraph::{GraphRecord, MotifMultiGraph, Placement};
pub use sampler::SeededRng;
