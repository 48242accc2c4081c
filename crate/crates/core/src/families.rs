//! Named graph families with fixed vertex labelings, their known multiset
//! dimensions, and the explicit witness sets known for them.
//!
//! Labelings:
//! - `Path(n)`, `Cycle(n)`: consecutive ids `0..n`; the cycle closes `n-1 ~ 0`.
//! - `Grid(m, n)`: `v_{i,j}` (rows `i = 1..m`, columns `j = 1..n`) gets id
//!   `(i-1)*n + (j-1)`.
//! - `SubdividedStar(n, p)`: center `0`; leg `b = 1..n` holds ids
//!   `1+(b-1)p ..= bp`, ordered by distance `1..p` from the center.
//! - `KAryTree(k, h)`: breadth-first ids, root `0`, children of `x` are
//!   `kx+1 ..= kx+k`.
//! - `Petersen`: outer cycle `0..5`, inner `5+i ~ 5+((i+2) mod 5)`, spokes
//!   `i ~ i+5`.
//! - `CounterexampleTree`: root `0`, children `1,2,3`, pendants `4,5` under
//!   `1`, `6,7` under `2`, `8,9` under `3`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("unrecognized family spec {0:?}")]
    Unrecognized(String),
    #[error("no known witness construction for {0}")]
    NoKnownWitness(FamilySpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// `K_{1,n}`.
    Star {
        n: usize,
    },
    /// `K_{1,n}` with every edge subdivided `p - 1` times.
    SubdividedStar {
        n: usize,
        p: usize,
    },
    /// `P_m □ P_n`.
    Grid {
        m: usize,
        n: usize,
    },
    /// Complete `k`-ary tree of height `h`.
    KAryTree {
        k: usize,
        h: usize,
    },
    Petersen,
    CounterexampleTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ExpectedMd {
    Finite(usize),
    Infinite,
    Unspecified(String),
}

fn check(ok: bool, what: &str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::InvalidParameter(what.to_string()))
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Path { n } => check(n >= 1, "path needs n >= 1"),
            FamilySpec::Cycle { n } => check(n >= 3, "cycle needs n >= 3"),
            FamilySpec::Complete { n } => check(n >= 1, "complete graph needs n >= 1"),
            FamilySpec::Star { n } => check(n >= 1, "star needs n >= 1"),
            FamilySpec::SubdividedStar { n, p } => {
                check(n >= 1 && p >= 1, "subdivided star needs n >= 1 and p >= 1")
            }
            FamilySpec::Grid { m, n } => check(m >= 1 && n >= 1, "grid needs m >= 1 and n >= 1"),
            FamilySpec::KAryTree { k, h } => {
                check(k >= 1 && h >= 1, "k-ary tree needs k >= 1 and h >= 1")
            }
            FamilySpec::Petersen | FamilySpec::CounterexampleTree => Ok(()),
        }
    }

    /// Vertex count of the generated graph.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path { n } | FamilySpec::Cycle { n } | FamilySpec::Complete { n } => n,
            FamilySpec::Star { n } => n + 1,
            FamilySpec::SubdividedStar { n, p } => n * p + 1,
            FamilySpec::Grid { m, n } => m * n,
            FamilySpec::KAryTree { k, h } => (0..=h as u32).map(|l| k.pow(l)).sum(),
            FamilySpec::Petersen | FamilySpec::CounterexampleTree => 10,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::Star { n } => write!(f, "star:{n}"),
            FamilySpec::SubdividedStar { n, p } => write!(f, "substar:{n}x{p}"),
            FamilySpec::Grid { m, n } => write!(f, "grid:{m}x{n}"),
            FamilySpec::KAryTree { k, h } => write!(f, "karytree:{k}x{h}"),
            FamilySpec::Petersen => f.write_str("petersen"),
            FamilySpec::CounterexampleTree => f.write_str("cextree"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `path:7`, `cycle:9`, `complete:5`, `star:4`, `substar:4x3`,
    /// `grid:4x5`, `karytree:2x3`, `petersen`, `cextree`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Unrecognized(s.to_string());
        let (name, args) = match s.trim().split_once(':') {
            Some((name, args)) => (name, Some(args)),
            None => (s.trim(), None),
        };
        let one = || -> Result<usize, FamilyError> {
            args.ok_or_else(bad)?.trim().parse().map_err(|_| bad())
        };
        let two = || -> Result<(usize, usize), FamilyError> {
            let (a, b) = args.ok_or_else(bad)?.split_once('x').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        };
        let spec = match name {
            "path" => FamilySpec::Path { n: one()? },
            "cycle" => FamilySpec::Cycle { n: one()? },
            "complete" => FamilySpec::Complete { n: one()? },
            "star" => FamilySpec::Star { n: one()? },
            "substar" => {
                let (n, p) = two()?;
                FamilySpec::SubdividedStar { n, p }
            }
            "grid" => {
                let (m, n) = two()?;
                FamilySpec::Grid { m, n }
            }
            "karytree" => {
                let (k, h) = two()?;
                FamilySpec::KAryTree { k, h }
            }
            "petersen" if args.is_none() => FamilySpec::Petersen,
            "cextree" if args.is_none() => FamilySpec::CounterexampleTree,
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.validate()?;
    let order = spec.order();
    let edges: Vec<(usize, usize)> = match *spec {
        FamilySpec::Path { n } => path_edges(n),
        FamilySpec::Cycle { n } => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        FamilySpec::Complete { n } => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        FamilySpec::Star { n } => (1..=n).map(|v| (0, v)).collect(),
        FamilySpec::SubdividedStar { n, p } => (1..=n)
            .flat_map(|b| {
                let first = 1 + (b - 1) * p;
                std::iter::once((0, first)).chain((first + 1..first + p).map(|v| (v - 1, v)))
            })
            .collect(),
        FamilySpec::Grid { m, n } => {
            let mut edges = Vec::new();
            for i in 0..m {
                for j in 0..n {
                    let id = i * n + j;
                    if j + 1 < n {
                        edges.push((id, id + 1));
                    }
                    if i + 1 < m {
                        edges.push((id, id + n));
                    }
                }
            }
            edges
        }
        FamilySpec::KAryTree { k, .. } => (1..order).map(|v| ((v - 1) / k, v)).collect(),
        FamilySpec::Petersen => (0..5)
            .flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 2) % 5), (i, i + 5)])
            .collect(),
        FamilySpec::CounterexampleTree => vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (2, 7),
            (3, 8),
            (3, 9),
        ],
    };
    Ok(Graph::new(order, &edges).expect("family generators emit simple graphs"))
}

/// The multiset dimension known for a family instance.
pub fn expected_md(spec: &FamilySpec) -> Result<ExpectedMd, FamilyError> {
    spec.validate()?;
    use ExpectedMd::*;
    Ok(match *spec {
        FamilySpec::Path { .. } => Finite(1),
        FamilySpec::Cycle { n } if n <= 5 => Infinite,
        FamilySpec::Cycle { .. } => Finite(3),
        FamilySpec::Complete { n } if n <= 2 => Finite(1),
        FamilySpec::Complete { .. } => Infinite,
        FamilySpec::Star { n } if n <= 2 => Finite(1),
        FamilySpec::Star { .. } => Infinite,
        FamilySpec::SubdividedStar { n, .. } if n <= 2 => Finite(1),
        FamilySpec::SubdividedStar { p: 1, .. } => Infinite,
        FamilySpec::SubdividedStar { n: 3, .. } => Unspecified(
            "the subdivided-star value n-1 = 2 contradicts the absence of dimension 2; resolved by search".into(),
        ),
        FamilySpec::SubdividedStar { n, p } if p >= n - 1 => Finite(n - 1),
        FamilySpec::SubdividedStar { .. } => Unspecified("only md != n-1 is known for p < n-1".into()),
        FamilySpec::Grid { m, n } if m == 1 || n == 1 => Finite(1),
        FamilySpec::Grid { m: 2, n: 2 } => Infinite,
        FamilySpec::Grid { .. } => Finite(3),
        FamilySpec::KAryTree { k: 1, .. } => Finite(1),
        FamilySpec::KAryTree { k: 2, h } => Finite((1 << h) - 1),
        FamilySpec::KAryTree { .. } => Infinite,
        FamilySpec::Petersen | FamilySpec::CounterexampleTree => Infinite,
    })
}

/// Explicit m-resolving sets for the families that come with one.
pub fn witness_for(spec: &FamilySpec) -> Result<Vec<usize>, FamilyError> {
    spec.validate()?;
    let none = || Err(FamilyError::NoKnownWitness(*spec));
    match *spec {
        FamilySpec::Path { .. } => Ok(vec![0]),
        FamilySpec::Cycle { n } if n >= 6 => Ok(vec![0, 1, 3]),
        // v_{1,1}, v_{1,2}, v_{3,1}
        FamilySpec::Grid { m, n } if m >= 3 && n >= 2 => Ok(vec![0, 1, 2 * n]),
        // the same construction on the transposed grid: v_{1,1}, v_{2,1}, v_{1,3}
        FamilySpec::Grid { m: 2, n } if n >= 3 => Ok(vec![0, 2, n]),
        FamilySpec::KAryTree { k: 2, h } => Ok((1..(1usize << (h + 1)) - 1).step_by(2).collect()),
        FamilySpec::SubdividedStar { n, p } if n >= 4 && p >= n - 1 => {
            Ok((1..n).map(|b| 1 + (b - 1) * p + (b - 1)).collect())
        }
        _ => none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, DistanceMatrix};
    use crate::resolving::is_m_resolving;

    fn g(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "path:7",
            "cycle:9",
            "complete:5",
            "star:4",
            "substar:4x3",
            "grid:4x5",
            "karytree:2x3",
            "petersen",
            "cextree",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(matches!(
            "cycle:2".parse::<FamilySpec>(),
            Err(FamilyError::InvalidParameter(_))
        ));
        assert!(matches!(
            "wheel:5".parse::<FamilySpec>(),
            Err(FamilyError::Unrecognized(_))
        ));
        assert!(matches!(
            "grid:4".parse::<FamilySpec>(),
            Err(FamilyError::Unrecognized(_))
        ));
        assert!(matches!(
            "petersen:3".parse::<FamilySpec>(),
            Err(FamilyError::Unrecognized(_))
        ));
    }

    #[test]
    fn closed_form_counts() {
        for n in 1..9 {
            let p = g(&format!("path:{n}"));
            assert_eq!((p.n(), p.edge_count()), (n, n - 1));
            let s = g(&format!("star:{n}"));
            assert_eq!((s.n(), s.edge_count()), (n + 1, n));
        }
        for n in 3..9 {
            let c = g(&format!("cycle:{n}"));
            assert_eq!((c.n(), c.edge_count()), (n, n));
        }
        let t = g("karytree:2x2");
        assert_eq!((t.n(), t.edge_count()), (7, 6));
        assert_eq!(g("karytree:3x2").n(), 13);
    }

    #[test]
    fn substar_with_p_one_is_a_star() {
        assert_eq!(g("substar:3x1"), g("star:3"));
        let s = g("substar:4x3");
        assert_eq!(s.n(), 13);
        assert_eq!(s.degree(0), 4);
        let d = DistanceMatrix::new(&s).unwrap();
        // leg 2 is ids 4,5,6
        assert_eq!((d.get(0, 4), d.get(0, 5), d.get(0, 6)), (1, 2, 3));
    }

    #[test]
    fn grid_is_product_of_paths() {
        for m in 1..6 {
            for n in 1..6 {
                let grid = g(&format!("grid:{m}x{n}"));
                assert_eq!(
                    grid,
                    cartesian_product(&g(&format!("path:{m}")), &g(&format!("path:{n}")))
                );
            }
        }
        let grid = g("grid:3x2");
        assert_eq!((grid.n(), grid.edge_count()), (6, 7));
    }

    #[test]
    fn fixed_graphs() {
        let p = g("petersen");
        assert_eq!(p.edge_count(), 15);
        assert!(p.has_edge(5, 7) && p.has_edge(9, 6) && p.has_edge(3, 8));
        let t = g("cextree");
        assert_eq!(t.neighbors(2), &[0, 6, 7]);
    }

    #[test]
    fn expected_values() {
        let e = |s: &str| expected_md(&s.parse().unwrap()).unwrap();
        assert_eq!(e("cycle:6"), ExpectedMd::Finite(3));
        assert_eq!(e("cycle:5"), ExpectedMd::Infinite);
        assert_eq!(e("karytree:3x2"), ExpectedMd::Infinite);
        assert_eq!(e("karytree:2x3"), ExpectedMd::Finite(7));
        assert_eq!(e("karytree:1x4"), ExpectedMd::Finite(1));
        assert!(matches!(e("substar:3x2"), ExpectedMd::Unspecified(_)));
        assert_eq!(e("substar:4x3"), ExpectedMd::Finite(3));
        assert!(matches!(e("substar:5x3"), ExpectedMd::Unspecified(_)));
        assert_eq!(e("grid:1x7"), ExpectedMd::Finite(1));
        assert_eq!(e("grid:2x2"), ExpectedMd::Infinite);
        assert_eq!(e("grid:4x5"), ExpectedMd::Finite(3));
        assert_eq!(e("star:2"), ExpectedMd::Finite(1));
        assert_eq!(e("star:3"), ExpectedMd::Infinite);
        assert_eq!(e("petersen"), ExpectedMd::Infinite);
    }

    #[test]
    fn witnesses() {
        let w = |s: &str| witness_for(&s.parse().unwrap());
        assert_eq!(w("cycle:8").unwrap(), vec![0, 1, 3]);
        assert_eq!(w("grid:3x4").unwrap(), vec![0, 1, 8]);
        assert_eq!(w("karytree:2x3").unwrap(), vec![1, 3, 5, 7, 9, 11, 13]);
        assert_eq!(w("substar:4x3").unwrap(), vec![1, 5, 9]);
        assert!(matches!(w("cycle:5"), Err(FamilyError::NoKnownWitness(_))));
        assert!(matches!(w("petersen"), Err(FamilyError::NoKnownWitness(_))));

        for s in [
            "cycle:8",
            "grid:3x4",
            "grid:2x5",
            "karytree:2x3",
            "karytree:2x1",
            "substar:4x3",
            "substar:4x5",
            "substar:6x5",
        ] {
            let graph = g(s);
            let d = DistanceMatrix::new(&graph).unwrap();
            assert!(is_m_resolving(&d, &w(s).unwrap()).unwrap().resolving, "{s}");
        }
        // the interior zone depends only on i + j: v_{3,3} and v_{4,2} collide
        let graph = g("grid:4x3");
        let d = DistanceMatrix::new(&graph).unwrap();
        let r = is_m_resolving(&d, &w("grid:4x3").unwrap()).unwrap();
        assert_eq!(r.first_collision.map(|(u, v, _)| (u, v)), Some((8, 10)));
        // branch distances 1..4 do not separate distance 2 on branch 1 from
        // distance 3 on branch 4
        let graph = g("substar:5x6");
        let d = DistanceMatrix::new(&graph).unwrap();
        let r = is_m_resolving(&d, &w("substar:5x6").unwrap()).unwrap();
        assert_eq!(r.first_collision.map(|(u, v, _)| (u, v)), Some((2, 21)));
    }
}
