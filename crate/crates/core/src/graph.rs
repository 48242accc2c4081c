//! Simple undirected graphs over dense vertex ids, breadth-first distances,
//! and the structural vertex classifications used by the bounds and the
//! search pruning rules.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {{{u}, {v}}} is a loop")]
    LoopEdge { u: usize, v: usize },
    #[error("edge {{{u}, {v}}} appears more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("edge {{{u}, {v}}} references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("graph is disconnected: no path between {a} and {b}")]
    Disconnected { a: usize, b: usize },
    #[error("twin relation is not transitive on {a}, {b}, {c}")]
    RelationNotTransitive { a: usize, b: usize, c: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted ascending, so two graphs with the same edge
/// set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { u, v });
            }
            if adjacency[u].contains(&v) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { adjacency })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.unreachable_from_zero().is_none()
    }

    fn unreachable_from_zero(&self) -> Option<usize> {
        if self.n() == 0 {
            return None;
        }
        let dist = self.bfs(0);
        dist.iter().position(|d| d.is_none())
    }

    /// True when the graph is a path `P_n` (including `P_1` and `P_2`).
    pub fn is_path(&self) -> bool {
        let n = self.n();
        n >= 1
            && self.edge_count() == n - 1
            && self.adjacency.iter().all(|l| l.len() <= 2)
            && self.is_connected()
    }

    fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n())?;
        for (u, v) in self.edges() {
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}

/// All-pairs hop counts of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// Runs one BFS per vertex. Fails if the graph is disconnected.
    pub fn new(g: &Graph) -> Result<Self, GraphError> {
        if let Some(b) = g.unreachable_from_zero() {
            return Err(GraphError::Disconnected { a: 0, b });
        }
        let n = g.n();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(g.bfs(s).into_iter().map(|x| x.expect("connected")));
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex {
                vertex: v,
                n: self.n,
            })
        }
    }
}

/// Shorthand for [`DistanceMatrix::new`].
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    DistanceMatrix::new(g)
}

/// Partition of the vertices into classes of the relation "equal or twins",
/// where `u` and `v` are twins when `N(u) \ {v} = N(v) \ {u}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    classes: Vec<Vec<usize>>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl TwinPartition {
    /// Classes ordered by their least member; members ascending.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn pairs(&self) -> impl Iterator<Item = &[usize]> {
        self.classes
            .iter()
            .filter(|c| c.len() == 2)
            .map(Vec::as_slice)
    }

    pub fn pair_count(&self) -> usize {
        self.pairs().count()
    }

    pub fn largest(&self) -> Option<&[usize]> {
        self.classes
            .iter()
            .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
            .map(Vec::as_slice)
    }
}

pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let a = g.neighbors(u).iter().filter(|&&x| x != v);
    let b = g.neighbors(v).iter().filter(|&&x| x != u);
    a.eq(b)
}

/// Groups vertices into twin classes and checks the grouping is an
/// equivalence (every pair inside a class is a twin pair).
pub fn twin_partition(g: &Graph) -> Result<TwinPartition, GraphError> {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if class_of[u] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = vec![u];
        class_of[u] = id;
        for (v, slot) in class_of.iter_mut().enumerate().skip(u + 1) {
            if *slot == usize::MAX && are_twins(g, u, v) {
                *slot = id;
                class.push(v);
            }
        }
        classes.push(class);
    }
    for class in &classes {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                if !are_twins(g, a, b) {
                    return Err(GraphError::RelationNotTransitive {
                        a: class[0],
                        b: a,
                        c: b,
                    });
                }
            }
        }
    }
    // A vertex twinned to a member of an earlier class would mean that class
    // absorbed it through a non-transitive chain.
    for u in 0..n {
        for v in u + 1..n {
            if class_of[u] != class_of[v] && are_twins(g, u, v) {
                let c = classes[class_of[u]][0];
                return Err(GraphError::RelationNotTransitive { a: c, b: u, c: v });
            }
        }
    }
    Ok(TwinPartition { classes, class_of })
}

/// Degree-3 vertices and their terminal pendant vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MajorVertexReport {
    pub majors: Vec<usize>,
    /// `(major, terminal pendants)` for every major vertex, ascending.
    pub terminals: Vec<(usize, Vec<usize>)>,
    pub sigma: usize,
    pub ex: usize,
}

impl MajorVertexReport {
    /// `sigma - ex`, the classical lower bound on the metric dimension.
    pub fn terminal_excess(&self) -> usize {
        self.sigma - self.ex
    }
}

pub fn major_vertex_report(g: &Graph, d: &DistanceMatrix) -> MajorVertexReport {
    let n = g.n();
    let majors: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    let mut terminals: Vec<(usize, Vec<usize>)> = majors.iter().map(|&m| (m, Vec::new())).collect();
    for u in (0..n).filter(|&u| g.degree(u) == 1) {
        // terminal for v iff strictly closer to v than to every other major
        let mut best: Option<(u32, usize)> = None;
        let mut tied = false;
        for (i, &m) in majors.iter().enumerate() {
            let dist = d.get(u, m);
            match best {
                Some((bd, _)) if dist > bd => {}
                Some((bd, _)) if dist == bd => tied = true,
                _ => {
                    best = Some((dist, i));
                    tied = false;
                }
            }
        }
        if let (Some((_, i)), false) = (best, tied) {
            terminals[i].1.push(u);
        }
    }
    let sigma = terminals.iter().map(|(_, t)| t.len()).sum();
    let ex = terminals.iter().filter(|(_, t)| !t.is_empty()).count();
    MajorVertexReport {
        majors,
        terminals,
        sigma,
        ex,
    }
}

/// Cartesian product `g □ h`; vertex `(a, b)` gets id `a * |V(h)| + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (gn, hn) = (g.n(), h.n());
    let mut edges = Vec::new();
    for a in 0..gn {
        for b in 0..hn {
            let id = a * hn + b;
            for &b2 in h.neighbors(b).iter().filter(|&&b2| b2 > b) {
                edges.push((id, a * hn + b2));
            }
            for &a2 in g.neighbors(a).iter().filter(|&&a2| a2 > a) {
                edges.push((id, a2 * hn + b));
            }
        }
    }
    Graph::new(gn * hn, &edges).expect("product of simple graphs is simple")
}
