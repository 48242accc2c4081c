//! Representation multisets, resolving-set checks, lower bounds on the
//! multiset dimension and the certificates that rule out any m-resolving set.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::graph::{DistanceMatrix, Graph, GraphError, MajorVertexReport, TwinPartition};

/// The multiset `{d(v, w) : w ∈ W}`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DistanceMultiset(Vec<u32>);

impl DistanceMultiset {
    pub fn from_unsorted(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable();
        DistanceMultiset(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, value: u32) -> usize {
        self.0.iter().filter(|&&x| x == value).count()
    }
}

impl fmt::Display for DistanceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Outcome of checking whether a vertex set resolves the graph.
///
/// `first_collision` is the pair `(u, v)`, `u < v`, with the smallest `v`
/// (then smallest `u`) whose representations coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionReport<R> {
    pub resolving: bool,
    pub first_collision: Option<(usize, usize, R)>,
}

pub fn representation(
    d: &DistanceMatrix,
    v: usize,
    w: &[usize],
) -> Result<DistanceMultiset, GraphError> {
    d.check_vertex(v)?;
    for &x in w {
        d.check_vertex(x)?;
    }
    Ok(representation_unchecked(d, v, w))
}

pub(crate) fn representation_unchecked(
    d: &DistanceMatrix,
    v: usize,
    w: &[usize],
) -> DistanceMultiset {
    DistanceMultiset::from_unsorted(w.iter().map(|&x| d.get(v, x)).collect())
}

/// The ordered distance vector `(d(v, w_1), ..., d(v, w_k))`.
pub fn metric_representation(d: &DistanceMatrix, v: usize, w: &[usize]) -> Vec<u32> {
    w.iter().map(|&x| d.get(v, x)).collect()
}

fn first_collision<R, F>(n: usize, mut rep: F) -> CollisionReport<R>
where
    R: Eq + std::hash::Hash + Clone,
    F: FnMut(usize) -> R,
{
    let mut seen: HashMap<R, usize> = HashMap::with_capacity(n);
    for v in 0..n {
        let r = rep(v);
        if let Some(&u) = seen.get(&r) {
            return CollisionReport {
                resolving: false,
                first_collision: Some((u, v, r)),
            };
        }
        seen.insert(r, v);
    }
    CollisionReport {
        resolving: true,
        first_collision: None,
    }
}

/// Checks that all `n` representation multisets are pairwise distinct.
/// The empty set resolves only the one-vertex graph.
pub fn is_m_resolving(
    d: &DistanceMatrix,
    w: &[usize],
) -> Result<CollisionReport<DistanceMultiset>, GraphError> {
    for &x in w {
        d.check_vertex(x)?;
    }
    Ok(first_collision(d.n(), |v| {
        representation_unchecked(d, v, w)
    }))
}

/// Checks that the ordered distance vectors with respect to `w` are
/// pairwise distinct.
pub fn is_metric_resolving(
    d: &DistanceMatrix,
    w: &[usize],
) -> Result<CollisionReport<Vec<u32>>, GraphError> {
    for &x in w {
        d.check_vertex(x)?;
    }
    Ok(first_collision(d.n(), |v| metric_representation(d, v, w)))
}

/// True when `w` has at least two vertices and every two of them are at
/// distance at most 2. Such a set is never m-resolving.
pub fn pairwise_within_two(d: &DistanceMatrix, w: &[usize]) -> bool {
    w.len() >= 2
        && w.iter()
            .enumerate()
            .all(|(i, &a)| w[i + 1..].iter().all(|&b| d.get(a, b) <= 2))
}

/// `C(n, k)` computed with the multiplicative formula, saturating at `cap`.
/// Callers that only compare against `cap` never see an overflow.
pub fn binomial_capped(n: u64, k: u64, cap: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n-k+i) / i stays integral: it is C(n-k+i, i)
        acc = acc * (n as u128 - k as u128 + i) / i;
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

/// Least `k ≥ 1` with `C(k+d-1, d-1) + k ≥ n`: the number of vertices
/// outside a basis of size `k` cannot exceed the number of multisets of
/// `k` distances drawn from `1..=d`.
pub fn f_lower_bound(n: usize, d: usize) -> usize {
    assert!(d >= 1, "diameter bound needs d >= 1");
    let target = n as u128;
    let mut k: usize = 1;
    loop {
        let outside = binomial_capped((k + d - 1) as u64, (d - 1) as u64, target);
        if outside + k as u128 >= target {
            return k;
        }
        k += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Trivial,
    NonPath,
    TerminalExcess,
    Diameter,
    TwinPairs,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Trivial => "trivial (md >= 1)",
            BoundKind::NonPath => "non-path (md >= 3)",
            BoundKind::TerminalExcess => "sigma - ex (md >= dim >= sigma - ex)",
            BoundKind::Diameter => "diameter f(n, d)",
            BoundKind::TwinPairs => "one vertex per twin pair",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub value: usize,
    /// Every bound with its value, in `BoundKind` order.
    pub contributions: Vec<(BoundKind, usize)>,
}

impl LowerBound {
    /// The bounds attaining the maximum.
    pub fn achieved_by(&self) -> Vec<BoundKind> {
        self.contributions
            .iter()
            .filter(|(_, v)| *v == self.value)
            .map(|(k, _)| *k)
            .collect()
    }
}

pub fn md_lower_bound(
    g: &Graph,
    d: &DistanceMatrix,
    tp: &TwinPartition,
    mr: &MajorVertexReport,
) -> LowerBound {
    let n = g.n();
    let mut contributions = vec![(BoundKind::Trivial, 1)];
    if !g.is_path() {
        contributions.push((BoundKind::NonPath, 3));
    }
    contributions.push((BoundKind::TerminalExcess, mr.terminal_excess()));
    let diam = d.diameter() as usize;
    if diam >= 1 {
        contributions.push((BoundKind::Diameter, f_lower_bound(n, diam)));
    }
    contributions.push((BoundKind::TwinPairs, tp.pair_count()));
    let value = contributions.iter().map(|&(_, v)| v).max().unwrap_or(1);
    LowerBound {
        value,
        contributions,
    }
}

/// Reason why no m-resolving set exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfiniteCertificate {
    DiameterTwoNonPath,
    LargeTwinClass { class: Vec<usize> },
    ExhaustiveSearch,
}

impl fmt::Display for InfiniteCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteCertificate::DiameterTwoNonPath => {
                f.write_str("diameter-2 non-path certificate")
            }
            InfiniteCertificate::LargeTwinClass { class } => {
                write!(
                    f,
                    "twin class of size {} certificate: {:?}",
                    class.len(),
                    class
                )
            }
            InfiniteCertificate::ExhaustiveSearch => f.write_str("exhaustive search certificate"),
        }
    }
}

/// Every detector certificate that applies, diameter first.
pub fn infinite_certificates(
    g: &Graph,
    d: &DistanceMatrix,
    tp: &TwinPartition,
) -> Vec<InfiniteCertificate> {
    let mut out = Vec::new();
    if d.diameter() <= 2 && !g.is_path() {
        out.push(InfiniteCertificate::DiameterTwoNonPath);
    }
    if let Some(class) = tp.largest().filter(|c| c.len() >= 3) {
        out.push(InfiniteCertificate::LargeTwinClass {
            class: class.to_vec(),
        });
    }
    out
}

/// The first certificate from [`infinite_certificates`]. `None` does not
/// mean the dimension is finite.
pub fn detect_infinite(
    g: &Graph,
    d: &DistanceMatrix,
    tp: &TwinPartition,
) -> Option<InfiniteCertificate> {
    infinite_certificates(g, d, tp).into_iter().next()
}
