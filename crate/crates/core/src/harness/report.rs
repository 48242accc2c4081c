use std::fmt;

use serde::Serialize;

use crate::graph::Graph;

/// A graph as `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GraphEdges {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphEdges {
    fn from(g: &Graph) -> Self {
        GraphEdges {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

impl fmt::Display for GraphEdges {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        for (u, v) in &self.edges {
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Finding,
    Violation,
    Aborted,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Finding => "FINDING",
            CheckStatus::Violation => "VIOLATION",
            CheckStatus::Aborted => "ABORTED",
        })
    }
}

/// One entry of the structured report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check_id: String,
    pub status: CheckStatus,
    pub graph: Option<GraphEdges>,
    pub summary: String,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn has_violations(&self) -> bool {
        self.count(CheckStatus::Violation) > 0
    }

    pub fn get(&self, check_id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check_id == check_id)
    }

    pub fn findings(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Finding)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", c.status, c.check_id, c.summary)?;
        }
        let findings: Vec<&Check> = self.findings().collect();
        if !findings.is_empty() {
            writeln!(f)?;
            writeln!(f, "Findings:")?;
            for c in findings {
                writeln!(f, "  {}: {}", c.check_id, c.summary)?;
                if let Some(g) = &c.graph {
                    writeln!(f, "    graph: {g}")?;
                }
            }
        }
        writeln!(f)?;
        write!(
            f,
            "{} checks: {} pass, {} findings, {} violations, {} aborted",
            self.checks.len(),
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Finding),
            self.count(CheckStatus::Violation),
            self.count(CheckStatus::Aborted)
        )
    }
}
