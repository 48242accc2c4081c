//! Exhaustive scan of all labeled graphs of a given order.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::canon::{adjacency_masks, canonical_mask, graph_from_mask, is_connected, pair_count};
use super::{GraphEdges, HarnessError};
use crate::graph::{major_vertex_report, twin_partition, DistanceMatrix};
use crate::resolving::{f_lower_bound, infinite_certificates, is_m_resolving, md_lower_bound};
use crate::search::{compute_dim, compute_md, exhaustive_md, ResolveOutcome, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MdKey {
    Finite(usize),
    Infinite,
}

impl fmt::Display for MdKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MdKey::Finite(k) => write!(f, "{k}"),
            MdKey::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for MdKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub claim: String,
    pub graph: GraphEdges,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureFinding {
    pub claim: String,
    pub holds: bool,
    pub details: String,
    pub graphs: Vec<GraphEdges>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub dedup: bool,
    /// Labeled graphs enumerated, `2^C(n,2)`.
    pub graphs_total: u64,
    pub labeled_connected: u64,
    /// Connected graphs examined: labeled ones, or one per isomorphism
    /// class with dedup.
    pub graphs_connected: u64,
    pub md_histogram: BTreeMap<MdKey, u64>,
    pub dim_histogram: BTreeMap<usize, u64>,
    pub violations: Vec<Violation>,
    pub conjecture_findings: Vec<ConjectureFinding>,
    /// One witness graph (least edge mask) per finite md value.
    pub spectrum: BTreeMap<usize, GraphEdges>,
    pub diameter2_fraction: f64,
    pub detector_certified: u64,
    pub detector_confirmed: u64,
    /// md of every isomorphism class seen, keyed by canonical edge mask.
    #[serde(skip)]
    pub canonical_outcomes: BTreeMap<u32, MdKey>,
}

#[derive(Default)]
struct Partial {
    labeled_connected: u64,
    kept: u64,
    diameter2: u64,
    md_histogram: BTreeMap<MdKey, u64>,
    dim_histogram: BTreeMap<usize, u64>,
    violations: Vec<(String, u32, String)>,
    above_n_minus_1: Vec<u32>,
    max_finite: Option<usize>,
    spectrum: BTreeMap<usize, u32>,
    detector_certified: u64,
    detector_confirmed: u64,
    canonical_outcomes: BTreeMap<u32, MdKey>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.labeled_connected += other.labeled_connected;
        self.kept += other.kept;
        self.diameter2 += other.diameter2;
        for (k, v) in other.md_histogram {
            *self.md_histogram.entry(k).or_default() += v;
        }
        for (k, v) in other.dim_histogram {
            *self.dim_histogram.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
        self.above_n_minus_1.extend(other.above_n_minus_1);
        self.max_finite = self.max_finite.max(other.max_finite);
        for (k, m) in other.spectrum {
            let slot = self.spectrum.entry(k).or_insert(m);
            *slot = (*slot).min(m);
        }
        self.detector_certified += other.detector_certified;
        self.detector_confirmed += other.detector_confirmed;
        for (c, md) in other.canonical_outcomes {
            match self.canonical_outcomes.get(&c) {
                Some(&seen) if seen != md => self.violations.push((
                    "isomorphism-invariance".into(),
                    c,
                    format!("isomorphic graphs gave md {seen} and {md}"),
                )),
                _ => {
                    self.canonical_outcomes.insert(c, md);
                }
            }
        }
        self
    }

    fn visit(&mut self, n: usize, mask: u32, dedup: bool) {
        let adj = adjacency_masks(n, mask);
        if !is_connected(&adj) {
            return;
        }
        self.labeled_connected += 1;
        let canon = canonical_mask(n, mask);
        if dedup && canon != mask {
            return;
        }
        self.kept += 1;
        let mut violate =
            |claim: &str, details: String| self.violations.push((claim.to_string(), mask, details));

        let serial = SearchConfig::serial();
        let g = graph_from_mask(n, mask);
        let d = DistanceMatrix::new(&g).expect("connected");
        let tp = twin_partition(&g).expect("twin relation is an equivalence");
        let mr = major_vertex_report(&g, &d);
        let diam = d.diameter() as usize;
        let outcome = compute_md(&g, &serial).expect("connected");
        let dim = compute_dim(&g, &serial).expect("connected").value;

        if dim < mr.terminal_excess() {
            violate(
                "dim-at-least-terminal-excess",
                format!("dim {dim} < sigma - ex = {}", mr.terminal_excess()),
            );
        }
        let certificates = infinite_certificates(&g, &d, &tp);
        if !certificates.is_empty() {
            self.detector_certified += 1;
            match exhaustive_md(&d, &serial) {
                Ok(None) => self.detector_confirmed += 1,
                Ok(Some(w)) => violate(
                    "detector-soundness",
                    format!("{certificates:?} but {w:?} resolves"),
                ),
                Err(e) => violate("detector-soundness", e.to_string()),
            }
        }

        let key = match &outcome {
            ResolveOutcome::Finite { value, witness } => {
                let md = *value;
                if md == 2 {
                    violate(
                        "no-dimension-two",
                        format!("md = 2 with witness {witness:?}"),
                    );
                }
                if md < dim {
                    violate("md-at-least-dim", format!("md {md} < dim {dim}"));
                }
                let f = f_lower_bound(n, diam.max(1));
                if md < f {
                    violate("diameter-bound", format!("md {md} < f({n}, {diam}) = {f}"));
                }
                let lb = md_lower_bound(&g, &d, &tp, &mr).value;
                if md < lb {
                    violate(
                        "composite-lower-bound",
                        format!("md {md} < lower bound {lb}"),
                    );
                }
                if (md == 1) != g.is_path() {
                    violate(
                        "path-characterization",
                        format!("md {md}, is_path {}", g.is_path()),
                    );
                }
                if !g.is_path() && md < 3 {
                    violate("non-path-at-least-three", format!("md {md}"));
                }
                for pair in tp.pairs() {
                    let hit = pair.iter().filter(|v| witness.contains(v)).count();
                    if hit != 1 {
                        violate(
                            "twin-pair-exactly-one",
                            format!("witness {witness:?} meets {pair:?} {hit} times"),
                        );
                    }
                }
                if !is_m_resolving(&d, witness).expect("valid ids").resolving {
                    violate("witness-resolves", format!("{witness:?}"));
                }
                if md > n - 1 {
                    self.above_n_minus_1.push(mask);
                }
                self.max_finite = self.max_finite.max(Some(md));
                let slot = self.spectrum.entry(md).or_insert(mask);
                *slot = (*slot).min(mask);
                MdKey::Finite(md)
            }
            ResolveOutcome::Infinite { .. } => MdKey::Infinite,
            ResolveOutcome::Aborted { reason } => {
                violate("search-completes", reason.clone());
                MdKey::Infinite
            }
        };
        if diam <= 2 {
            self.diameter2 += 1;
        }
        *self.md_histogram.entry(key).or_default() += 1;
        *self.dim_histogram.entry(dim).or_default() += 1;
        self.canonical_outcomes.insert(canon, key);
    }
}

/// Runs the solver on every connected graph of order `n` (2..=7) and
/// checks each known bound. Bound failures are implementation bugs and
/// turn the result into [`HarnessError::BoundViolation`] carrying the
/// full report; conjecture outcomes are reported as findings.
pub fn scan_small_graphs(
    n: usize,
    dedup: bool,
    cfg: &SearchConfig,
) -> Result<ScanReport, HarnessError> {
    if !(2..=7).contains(&n) {
        return Err(HarnessError::OutOfRange(format!(
            "scan order must be in 2..=7, got {n}"
        )));
    }
    let total: u32 = 1 << pair_count(n);
    let partial = if cfg.parallel {
        let run = || {
            (0..total)
                .into_par_iter()
                .fold(Partial::default, |mut p, mask| {
                    p.visit(n, mask, dedup);
                    p
                })
                .reduce(Partial::default, Partial::merge)
        };
        match cfg.workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map(|pool| pool.install(run))
                .unwrap_or_else(|_| run()),
            None => run(),
        }
    } else {
        let mut p = Partial::default();
        for mask in 0..total {
            p.visit(n, mask, dedup);
        }
        p
    };

    let edges = |mask: u32| GraphEdges::from(&graph_from_mask(n, mask));
    let mut violations: Vec<Violation> = partial
        .violations
        .iter()
        .map(|(claim, mask, details)| Violation {
            claim: claim.clone(),
            graph: edges(*mask),
            details: details.clone(),
        })
        .collect();
    violations.sort();

    let mut above = partial.above_n_minus_1.clone();
    above.sort_unstable();
    let conjecture_findings = vec![
        ConjectureFinding {
            claim: "md-at-most-n-minus-1".into(),
            holds: above.is_empty(),
            details: match partial.max_finite {
                Some(m) if above.is_empty() => format!(
                    "holds at this scale: largest finite md over {} graphs of order {n} is {m}",
                    partial.kept
                ),
                Some(m) => format!("{} graphs have md above n-1 (largest {m})", above.len()),
                None => format!("no graph of order {n} has finite md"),
            },
            graphs: above.into_iter().map(edges).collect(),
        },
        ConjectureFinding {
            claim: "md-spectrum".into(),
            holds: true,
            details: format!(
                "finite md values achieved at order {n}: {:?}",
                partial.spectrum.keys().collect::<Vec<_>>()
            ),
            graphs: partial.spectrum.values().map(|&m| edges(m)).collect(),
        },
    ];

    let report = ScanReport {
        n,
        dedup,
        graphs_total: total as u64,
        labeled_connected: partial.labeled_connected,
        graphs_connected: partial.kept,
        md_histogram: partial.md_histogram,
        dim_histogram: partial.dim_histogram,
        violations,
        conjecture_findings,
        spectrum: partial
            .spectrum
            .iter()
            .map(|(&k, &m)| (k, edges(m)))
            .collect(),
        diameter2_fraction: if partial.kept == 0 {
            0.0
        } else {
            partial.diameter2 as f64 / partial.kept as f64
        },
        detector_certified: partial.detector_certified,
        detector_confirmed: partial.detector_confirmed,
        canonical_outcomes: partial.canonical_outcomes,
    };
    if report.violations.is_empty() {
        Ok(report)
    } else {
        Err(HarnessError::BoundViolation(Box::new(report)))
    }
}
