//! Reproduction of the closed-form representation tables, the exhaustive
//! scan of small graphs, and the full findings report.

mod canon;
mod report;
mod scan;
mod suite;
mod tables;

use thiserror::Error;

use crate::graph::GraphError;

pub use canon::{canonical_mask, edge_index, graph_from_mask, pair_count};
pub use report::{Check, CheckStatus, GraphEdges, Report};
pub use scan::{scan_small_graphs, ConjectureFinding, MdKey, ScanReport, Violation};
pub use suite::{run_suite, suite_families, SuiteConfig};
pub use tables::{cycle_table, grid_table, TableRow};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("scan of order {} found {} bound violations", .0.n, .0.violations.len())]
    BoundViolation(Box<ScanReport>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
