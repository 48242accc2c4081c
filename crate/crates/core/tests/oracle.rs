//! Independent oracles: a plain brute-force multiset dimension over small
//! graphs, and the diameter bound evaluated with exact factorials.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use proptest::prelude::*;

mod common;
use common::connected_graph;

use mdim::harness::suite_families;
use mdim::resolving::{binomial_capped, f_lower_bound};
use mdim::{compute_dim, compute_md, generate, FamilySpec, Graph, ResolveOutcome, SearchConfig};

fn bfs_rows(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<u32>>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut rows = Vec::with_capacity(n);
    for s in 0..n {
        let mut dist = vec![u32::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if dist.contains(&u32::MAX) {
            return None;
        }
        rows.push(dist);
    }
    Some(rows)
}

fn resolves(rows: &[Vec<u32>], w: &[usize]) -> bool {
    let mut seen = HashSet::new();
    rows.iter().all(|row| {
        let mut r: Vec<u32> = w.iter().map(|&x| row[x]).collect();
        r.sort_unstable();
        seen.insert(r)
    })
}

/// Least m-resolving set in lexicographic order among the smallest ones.
fn brute_md(rows: &[Vec<u32>]) -> Option<Vec<usize>> {
    let n = rows.len();
    for k in 1..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if resolves(rows, &idx) {
                return Some(idx);
            }
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

fn metric_brute(rows: &[Vec<u32>]) -> usize {
    let n = rows.len();
    (1..=n)
        .find(|&k| {
            (0u64..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .any(|m| {
                    let w: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                    let vecs: HashSet<Vec<u32>> = rows
                        .iter()
                        .map(|row| w.iter().map(|&x| row[x]).collect())
                        .collect();
                    vecs.len() == n
                })
        })
        .expect("the full vertex set resolves")
}

fn check_against_oracle(g: &Graph) {
    let rows = bfs_rows(g.n(), &g.edges()).expect("connected");
    let outcome = compute_md(g, &SearchConfig::serial()).unwrap();
    match brute_md(&rows) {
        Some(w) => assert_eq!(
            outcome,
            ResolveOutcome::Finite {
                value: w.len(),
                witness: w
            },
            "{g}"
        ),
        None => assert!(outcome.is_infinite(), "{g}: {outcome}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn md_matches_brute_force(g in connected_graph(1, 8)) {
        check_against_oracle(&g);
    }

    #[test]
    fn dim_matches_brute_force(g in connected_graph(1, 8)) {
        let rows = bfs_rows(g.n(), &g.edges()).unwrap();
        prop_assert_eq!(compute_dim(&g, &SearchConfig::serial()).unwrap().value, metric_brute(&rows));
    }
}

#[test]
fn family_instances_match_brute_force() {
    for spec in suite_families() {
        let g = generate(&spec).unwrap();
        if g.n() <= 13 {
            check_against_oracle(&g);
        }
    }
}

#[test]
fn hand_computed_values() {
    let cases = [
        (FamilySpec::Cycle { n: 7 }, Some(3)),
        (FamilySpec::Grid { m: 3, n: 3 }, Some(3)),
        (FamilySpec::KAryTree { k: 2, h: 2 }, Some(3)),
        (FamilySpec::Star { n: 3 }, None),
        (FamilySpec::CounterexampleTree, None),
        (FamilySpec::Petersen, None),
    ];
    for (spec, md) in cases {
        let g = generate(&spec).unwrap();
        let rows = bfs_rows(g.n(), &g.edges()).unwrap();
        assert_eq!(brute_md(&rows).map(|w| w.len()), md, "{spec}");
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// Least k with (k+d-1)! / (k! (d-1)!) + k >= n, by linear scan.
fn f_oracle(n: usize, d: usize) -> usize {
    (1..)
        .find(|&k| {
            factorial(k + d - 1) / (factorial(k) * factorial(d - 1)) + BigUint::from(k)
                >= BigUint::from(n)
        })
        .unwrap()
}

#[test]
fn diameter_bound_matches_factorial_oracle() {
    for n in 1..=100 {
        for d in 1..=20 {
            assert_eq!(f_lower_bound(n, d), f_oracle(n, d), "f({n}, {d})");
        }
    }
}

#[test]
fn diameter_bound_examples() {
    assert_eq!(f_lower_bound(13, 2), 6);
    for n in 2..=40 {
        assert_eq!(f_lower_bound(n, n - 1), 1, "f({n}, {})", n - 1);
    }
    for d in 1..=20 {
        assert_eq!(f_lower_bound(1, d), 1);
    }
}

#[test]
fn capped_binomial_matches_factorials() {
    for n in 0..=40u64 {
        for k in 0..=n {
            let exact =
                factorial(n as usize) / (factorial(k as usize) * factorial((n - k) as usize));
            let cap = 1u128 << 60;
            let got = binomial_capped(n, k, cap);
            if exact <= BigUint::from(cap) {
                assert_eq!(BigUint::from(got), exact, "C({n}, {k})");
            } else {
                assert_eq!(got, cap + 1, "C({n}, {k}) saturates");
            }
        }
    }
}
