#![allow(dead_code)]

use std::collections::BTreeSet;

use mdim::Graph;
use proptest::prelude::*;

/// Random connected graph: a random spanning tree plus each other pair
/// with probability `density / 8`.
pub fn connected_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
            (
                Just(n),
                parents,
                prop::collection::vec(0u8..8, n * n.saturating_sub(1) / 2),
                0u8..=8,
            )
        })
        .prop_map(|(n, parents, coins, density)| {
            let mut edges: BTreeSet<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            let mut coin = coins.iter();
            for j in 1..n {
                for i in 0..j {
                    if *coin.next().expect("one coin per pair") < density {
                        edges.insert((i, j));
                    }
                }
            }
            Graph::new(n, &edges.into_iter().collect::<Vec<_>>()).expect("simple edges")
        })
}

/// A graph together with a permutation of its vertices.
pub fn graph_and_permutation(
    min_n: usize,
    max_n: usize,
) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected_graph(min_n, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::new(g.n(), &edges).expect("relabeling keeps edges simple")
}
