//! Labeled small graphs as edge bitmasks, and a brute-force canonical form.
//!
//! Pair `(i, j)` with `i < j` owns bit `j(j-1)/2 + i`. The canonical form
//! is the least mask over relabelings that place vertices in ascending
//! order of (degree, sorted neighbor degrees), permuting freely within
//! equal signatures. The signature is invariant under isomorphism, so
//! isomorphic graphs share the same set of relabeled masks and hence the
//! same minimum.

use crate::graph::Graph;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn edge_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

pub(crate) fn adjacency_masks(n: usize, mask: u32) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for j in 1..n {
        for i in 0..j {
            if mask >> edge_index(i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

pub(crate) fn is_connected(adj: &[u32]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            next |= adj[v];
            f &= f - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

pub fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> edge_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).expect("mask edges are simple")
}

pub fn canonical_mask(n: usize, mask: u32) -> u32 {
    let adj = adjacency_masks(n, mask);
    let degree: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut signature: Vec<(u32, Vec<u32>, usize)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n)
                .filter(|&u| adj[v] >> u & 1 == 1)
                .map(|u| degree[u])
                .collect();
            nd.sort_unstable();
            (degree[v], nd, v)
        })
        .collect();
    signature.sort();

    // cells of equal signature, in signature order
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, s) in signature.iter().enumerate() {
        if i > 0 && signature[i - 1].0 == s.0 && signature[i - 1].1 == s.1 {
            cells.last_mut().expect("nonempty").push(s.2);
        } else {
            cells.push(vec![s.2]);
        }
    }

    let edges: Vec<(usize, usize)> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| mask >> edge_index(i, j) & 1 == 1)
        .collect();
    let mut position = vec![0usize; n];
    let mut best = u32::MAX;
    assign_cells(&cells, 0, 0, &mut position, &mut |pos| {
        let m = edges
            .iter()
            .fold(0u32, |m, &(i, j)| m | 1 << edge_index(pos[i], pos[j]));
        best = best.min(m);
    });
    best
}

/// Calls `visit` with every position assignment that maps cell `c` onto the
/// consecutive block of positions after the earlier cells.
fn assign_cells(
    cells: &[Vec<usize>],
    c: usize,
    start: usize,
    position: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if c == cells.len() {
        visit(position);
        return;
    }
    let mut members = cells[c].clone();
    permute(&mut members, 0, &mut |order| {
        for (k, &v) in order.iter().enumerate() {
            position[v] = start + k;
        }
        assign_cells(cells, c + 1, start + order.len(), position, visit);
    });
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
