//! Exact multiset dimension and metric dimension by exhaustive subset
//! search.
//!
//! Candidate sets are enumerated as ascending id lists in lexicographic
//! order, so the first set accepted at a given size is the lexicographically
//! least one. Parallel runs split the space into ordered prefixes and keep
//! the leftmost hit, which gives the same answer as the serial walk.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{major_vertex_report, twin_partition, DistanceMatrix, Graph, GraphError};
use crate::resolving::{
    detect_infinite, is_m_resolving, is_metric_resolving, md_lower_bound, metric_representation,
    representation, CollisionReport, DistanceMultiset, InfiniteCertificate,
};

/// Subsets are `u64` bitmasks.
pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest order handled by exhaustive search.
    pub max_vertices: usize,
    pub parallel: bool,
    /// Worker count for parallel runs; `None` uses the global pool.
    pub workers: Option<usize>,
    pub progress_reporting: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vertices: 24,
            parallel: true,
            workers: None,
            progress_reporting: false,
        }
    }
}

impl SearchConfig {
    pub fn serial() -> Self {
        SearchConfig {
            parallel: false,
            ..Self::default()
        }
    }

    pub fn with_workers(workers: usize) -> Self {
        SearchConfig {
            parallel: true,
            workers: Some(workers),
            ..Self::default()
        }
    }

    fn cap(&self) -> usize {
        self.max_vertices.clamp(1, MAX_SEARCH_VERTICES)
    }

    fn abort_reason(&self, n: usize) -> Option<String> {
        (n > self.cap()).then(|| {
            format!(
                "graph has {n} vertices, exhaustive search is capped at {}",
                self.cap()
            )
        })
    }

    fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match (self.parallel, self.workers) {
            (true, Some(w)) => match rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
            {
                Ok(pool) => pool.install(op),
                Err(_) => op(),
            },
            _ => op(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolveOutcome {
    Finite { value: usize, witness: Vec<usize> },
    Infinite { certificate: InfiniteCertificate },
    Aborted { reason: String },
}

impl ResolveOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            ResolveOutcome::Finite { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            ResolveOutcome::Finite { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&InfiniteCertificate> {
        match self {
            ResolveOutcome::Infinite { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ResolveOutcome::Infinite { .. })
    }
}

impl fmt::Display for ResolveOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveOutcome::Finite { value, witness } => {
                write!(f, "md = {value}, witness = {}", format_set(witness))
            }
            ResolveOutcome::Infinite { certificate } => write!(f, "md = infinite ({certificate})"),
            ResolveOutcome::Aborted { reason } => write!(f, "aborted: {reason}"),
        }
    }
}

pub fn format_set(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricBasis {
    pub value: usize,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("aborted: {0}")]
    Aborted(String),
}

pub(crate) fn mask_to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn bit_length(x: u64) -> u32 {
    64 - x.leading_zeros()
}

/// Per-class inclusion bounds over a fixed vertex order.
///
/// Every vertex belongs to one class; a candidate set must contain between
/// `min` and `max` members of each class.
struct CandidateSpace {
    n: usize,
    class_of: Vec<usize>,
    bounds: Vec<(u8, u8)>,
    /// `remaining[i * classes + c]`: members of class `c` with id `>= i`.
    remaining: Vec<u8>,
}

struct Prefix {
    next: usize,
    mask: u64,
    chosen: usize,
    included: Vec<u8>,
}

impl CandidateSpace {
    fn new(n: usize, class_of: Vec<usize>, bounds: Vec<(u8, u8)>) -> Self {
        let classes = bounds.len();
        let mut remaining = vec![0u8; (n + 1) * classes];
        for i in (0..n).rev() {
            let (head, tail) = remaining.split_at_mut((i + 1) * classes);
            head[i * classes..].copy_from_slice(&tail[..classes]);
            head[i * classes + class_of[i]] += 1;
        }
        CandidateSpace {
            n,
            class_of,
            bounds,
            remaining,
        }
    }

    fn unconstrained(n: usize) -> Self {
        Self::new(n, (0..n).collect(), vec![(0, 1); n])
    }

    fn classes(&self) -> usize {
        self.bounds.len()
    }

    fn feasible(&self, i: usize, chosen: usize, k: usize, included: &[u8]) -> bool {
        let slots = k - chosen;
        let base = i * self.classes();
        let (mut need, mut can) = (0usize, 0usize);
        for (c, &(lo, hi)) in self.bounds.iter().enumerate() {
            let rem = self.remaining[base + c];
            let inc = included[c];
            let want = lo.saturating_sub(inc);
            if want > rem {
                return false;
            }
            need += want as usize;
            can += hi.saturating_sub(inc).min(rem) as usize;
        }
        need <= slots && slots <= can
    }

    /// Walks the subtree below a prefix in lexicographic order and returns
    /// the first accepted set.
    fn walk<F>(
        &self,
        i: usize,
        mask: u64,
        chosen: usize,
        k: usize,
        included: &mut [u8],
        accept: &F,
    ) -> Option<u64>
    where
        F: Fn(u64) -> bool,
    {
        if !self.feasible(i, chosen, k, included) {
            return None;
        }
        if chosen == k {
            return accept(mask).then_some(mask);
        }
        let c = self.class_of[i];
        if included[c] < self.bounds[c].1 {
            included[c] += 1;
            let hit = self.walk(i + 1, mask | 1 << i, chosen + 1, k, included, accept);
            included[c] -= 1;
            if hit.is_some() {
                return hit;
            }
        }
        self.walk(i + 1, mask, chosen, k, included, accept)
    }

    fn prefixes(&self, depth: usize, k: usize) -> Vec<Prefix> {
        let mut out = Vec::new();
        let mut included = vec![0u8; self.classes()];
        self.collect_prefixes(0, 0, 0, depth.min(self.n), k, &mut included, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_prefixes(
        &self,
        i: usize,
        mask: u64,
        chosen: usize,
        depth: usize,
        k: usize,
        included: &mut [u8],
        out: &mut Vec<Prefix>,
    ) {
        if !self.feasible(i, chosen, k, included) {
            return;
        }
        if i == depth || chosen == k {
            out.push(Prefix {
                next: i,
                mask,
                chosen,
                included: included.to_vec(),
            });
            return;
        }
        let c = self.class_of[i];
        if included[c] < self.bounds[c].1 {
            included[c] += 1;
            self.collect_prefixes(i + 1, mask | 1 << i, chosen + 1, depth, k, included, out);
            included[c] -= 1;
        }
        self.collect_prefixes(i + 1, mask, chosen, depth, k, included, out);
    }

    /// Lexicographically least accepted set of size `k`.
    fn first_accepted<F>(&self, k: usize, parallel: bool, accept: &F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync,
    {
        if k > self.n {
            return None;
        }
        if !parallel {
            let mut included = vec![0u8; self.classes()];
            return self.walk(0, 0, 0, k, &mut included, accept);
        }
        let prefixes = self.prefixes(10, k);
        prefixes
            .into_par_iter()
            .find_map_first(|mut p| self.walk(p.next, p.mask, p.chosen, k, &mut p.included, accept))
    }
}

/// Decides whether a subset (as a bitmask) is m-resolving.
///
/// With `|W| = k`, a vertex's multiset is packed as per-distance counts into
/// one `u128`, one field of `bit_length(k)` bits per distance value, when
/// that fits. Otherwise sorted vectors are compared.
struct MultisetChecker<'a> {
    d: &'a DistanceMatrix,
    packed: Option<(Vec<u128>, u32)>,
    far: Vec<u64>,
}

impl<'a> MultisetChecker<'a> {
    fn new(d: &'a DistanceMatrix, k: usize) -> Self {
        let n = d.n();
        let field = bit_length(k as u64).max(1);
        let fields = d.diameter() + 1;
        let packed = (fields * field <= 128).then(|| {
            let mut terms = Vec::with_capacity(n * n);
            for v in 0..n {
                for w in 0..n {
                    terms.push(1u128 << (d.get(v, w) * field));
                }
            }
            (terms, field)
        });
        let far = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| d.get(v, w) > 2)
                    .fold(0u64, |m, w| m | 1 << w)
            })
            .collect();
        MultisetChecker { d, packed, far }
    }

    fn violates_dist2(&self, mask: u64) -> bool {
        mask.count_ones() >= 2 && mask_to_vec(mask).iter().all(|&w| self.far[w] & mask == 0)
    }

    fn resolves(&self, mask: u64) -> bool {
        let n = self.d.n();
        let members = mask_to_vec(mask);
        match &self.packed {
            Some((terms, _)) => {
                let mut keys = [0u128; MAX_SEARCH_VERTICES];
                for (v, key) in keys.iter_mut().enumerate().take(n) {
                    let row = &terms[v * n..(v + 1) * n];
                    *key = members.iter().map(|&w| row[w]).sum();
                }
                all_distinct(&mut keys[..n])
            }
            None => {
                let mut reps: Vec<Vec<u32>> = (0..n)
                    .map(|v| {
                        let mut r: Vec<u32> = members.iter().map(|&w| self.d.get(v, w)).collect();
                        r.sort_unstable();
                        r
                    })
                    .collect();
                all_distinct(&mut reps)
            }
        }
    }

    fn accepts(&self, mask: u64) -> bool {
        !self.violates_dist2(mask) && self.resolves(mask)
    }
}

/// Decides whether a subset resolves the graph with ordered distance
/// vectors; vectors are packed into one `u128` when they fit.
struct MetricChecker<'a> {
    d: &'a DistanceMatrix,
    field: Option<u32>,
}

impl<'a> MetricChecker<'a> {
    fn new(d: &'a DistanceMatrix, k: usize) -> Self {
        let field = bit_length(d.diameter() as u64).max(1);
        MetricChecker {
            d,
            field: (k as u32 * field <= 128).then_some(field),
        }
    }

    fn resolves(&self, mask: u64) -> bool {
        let n = self.d.n();
        let members = mask_to_vec(mask);
        match self.field {
            Some(field) => {
                let mut keys = [0u128; MAX_SEARCH_VERTICES];
                for (v, key) in keys.iter_mut().enumerate().take(n) {
                    *key = members.iter().enumerate().fold(0u128, |acc, (i, &w)| {
                        acc | (self.d.get(v, w) as u128) << (i as u32 * field)
                    });
                }
                all_distinct(&mut keys[..n])
            }
            None => {
                let mut reps: Vec<Vec<u32>> = (0..n)
                    .map(|v| members.iter().map(|&w| self.d.get(v, w)).collect())
                    .collect();
                all_distinct(&mut reps)
            }
        }
    }
}

fn all_distinct<T: Ord>(items: &mut [T]) -> bool {
    items.sort_unstable();
    items.windows(2).all(|w| w[0] != w[1])
}

fn least_pendant(g: &Graph) -> usize {
    (0..g.n()).find(|&v| g.degree(v) <= 1).unwrap_or(0)
}

/// Exact multiset dimension.
///
/// Paths are answered directly by a pendant endpoint. Otherwise the two
/// detectors run first, then sizes `k = lb, lb+1, ...` are searched in
/// order. m-resolvability is not monotone under supersets, so a size is
/// only ruled out by checking every candidate of that size, and an
/// infinite answer requires exhausting every size.
///
/// Each candidate takes exactly one vertex from every twin pair: leaving
/// out both or taking both gives the pair equal multisets whatever else is
/// chosen. Candidates whose members are pairwise within distance 2 are
/// skipped without checking.
pub fn compute_md(g: &Graph, cfg: &SearchConfig) -> Result<ResolveOutcome, GraphError> {
    let d = DistanceMatrix::new(g)?;
    let n = g.n();
    if let Some(reason) = cfg.abort_reason(n) {
        return Ok(ResolveOutcome::Aborted { reason });
    }
    if g.is_path() {
        return Ok(ResolveOutcome::Finite {
            value: 1,
            witness: vec![least_pendant(g)],
        });
    }
    let tp = twin_partition(g)?;
    if let Some(certificate) = detect_infinite(g, &d, &tp) {
        return Ok(ResolveOutcome::Infinite { certificate });
    }
    let lb = md_lower_bound(g, &d, &tp, &major_vertex_report(g, &d)).value;

    let class_of: Vec<usize> = (0..n).map(|v| tp.class_of(v)).collect();
    // classes of size >= 3 were certified above
    let bounds: Vec<(u8, u8)> = tp
        .classes()
        .iter()
        .map(|c| if c.len() == 2 { (1, 1) } else { (0, 1) })
        .collect();
    let largest = tp.pair_count() + tp.classes().iter().filter(|c| c.len() == 1).count();
    let space = CandidateSpace::new(n, class_of, bounds);

    let found = cfg.install(|| {
        (lb..=largest).find_map(|k| {
            let checker = MultisetChecker::new(&d, k);
            let checked = AtomicU64::new(0);
            let accept = |mask: u64| {
                if cfg.progress_reporting {
                    checked.fetch_add(1, Ordering::Relaxed);
                }
                checker.accepts(mask)
            };
            let hit = space.first_accepted(k, cfg.parallel, &accept);
            if cfg.progress_reporting {
                eprintln!(
                    "md search: size {k}, {} candidates checked",
                    checked.load(Ordering::Relaxed)
                );
            }
            hit.map(|mask| (k, mask))
        })
    });

    Ok(match found {
        Some((k, mask)) => {
            assert_ne!(
                k, 2,
                "found an m-resolving set of size 2, which cannot exist"
            );
            ResolveOutcome::Finite {
                value: k,
                witness: mask_to_vec(mask),
            }
        }
        None => ResolveOutcome::Infinite {
            certificate: InfiniteCertificate::ExhaustiveSearch,
        },
    })
}

/// Least m-resolving set over all subsets of every size, with no pruning
/// rule applied. Used to confirm detector certificates.
pub fn exhaustive_md(
    d: &DistanceMatrix,
    cfg: &SearchConfig,
) -> Result<Option<Vec<usize>>, SearchError> {
    let n = d.n();
    if let Some(reason) = cfg.abort_reason(n) {
        return Err(SearchError::Aborted(reason));
    }
    let space = CandidateSpace::unconstrained(n);
    let found = cfg.install(|| {
        (1..=n).find_map(|k| {
            let checker = MultisetChecker::new(d, k);
            space.first_accepted(k, cfg.parallel, &|mask| checker.resolves(mask))
        })
    });
    Ok(found.map(mask_to_vec))
}

/// Exact metric dimension with the lexicographically least basis.
///
/// Search starts at `max(1, sigma - ex, sum over twin classes of |C| - 1)`;
/// a resolving set leaves out at most one vertex of each twin class.
pub fn compute_dim(g: &Graph, cfg: &SearchConfig) -> Result<MetricBasis, SearchError> {
    let d = DistanceMatrix::new(g)?;
    let n = g.n();
    if let Some(reason) = cfg.abort_reason(n) {
        return Err(SearchError::Aborted(reason));
    }
    if n == 1 {
        return Ok(MetricBasis {
            value: 1,
            witness: vec![0],
        });
    }
    let tp = twin_partition(g)?;
    let twin_floor: usize = tp.classes().iter().map(|c| c.len() - 1).sum();
    let lb = 1usize
        .max(major_vertex_report(g, &d).terminal_excess())
        .max(twin_floor);
    let class_of: Vec<usize> = (0..n).map(|v| tp.class_of(v)).collect();
    let bounds = tp
        .classes()
        .iter()
        .map(|c| ((c.len() - 1) as u8, c.len() as u8))
        .collect();
    let space = CandidateSpace::new(n, class_of, bounds);

    let found = cfg.install(|| {
        (lb..=n).find_map(|k| {
            let checker = MetricChecker::new(&d, k);
            space
                .first_accepted(k, cfg.parallel, &|mask| checker.resolves(mask))
                .map(|mask| (k, mask))
        })
    });
    let (value, mask) = found.expect("the full vertex set always resolves");
    Ok(MetricBasis {
        value,
        witness: mask_to_vec(mask),
    })
}

/// Both resolving checks for a given set plus every vertex's
/// representation, for comparing against published tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub witness: Vec<usize>,
    pub multiset: CollisionReport<DistanceMultiset>,
    pub metric: CollisionReport<Vec<u32>>,
    pub representations: Vec<DistanceMultiset>,
    pub vectors: Vec<Vec<u32>>,
}

/// The set is taken as ascending ids with duplicates removed.
pub fn verify_witness(g: &Graph, w: &[usize]) -> Result<WitnessReport, GraphError> {
    let d = DistanceMatrix::new(g)?;
    let mut witness = w.to_vec();
    witness.sort_unstable();
    witness.dedup();
    let multiset = is_m_resolving(&d, &witness)?;
    let metric = is_metric_resolving(&d, &witness)?;
    let representations = (0..g.n())
        .map(|v| representation(&d, v, &witness))
        .collect::<Result<_, _>>()?;
    let vectors = (0..g.n())
        .map(|v| metric_representation(&d, v, &witness))
        .collect();
    Ok(WitnessReport {
        witness,
        multiset,
        metric,
        representations,
        vectors,
    })
}
