//! Exact multiset dimension of small connected graphs.
//!
//! The multiset dimension `md(G)` is the least size of a vertex set `W`
//! such that the multisets of distances `{d(v, w) : w ∈ W}` differ for every
//! two vertices `v`, or infinite when no such set exists. This crate
//! computes it together with the classical metric dimension, certifies
//! infinite values, generates the standard families with their known
//! values and witnesses, and scans all small graphs against the known
//! bounds.

pub mod cli;
pub mod families;
pub mod graph;
pub mod harness;
pub mod resolving;
pub mod search;

pub use families::{expected_md, generate, witness_for, ExpectedMd, FamilySpec};
pub use graph::{DistanceMatrix, Graph, GraphError, TwinPartition};
pub use resolving::{DistanceMultiset, InfiniteCertificate};
pub use search::{compute_dim, compute_md, verify_witness, ResolveOutcome, SearchConfig};
