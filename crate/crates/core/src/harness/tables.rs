//! Closed-form representations of the cycle witness `{v_0, v_1, v_3}` and
//! the grid witness `{v_{1,1}, v_{1,2}, v_{3,1}}`, checked against BFS.

use serde::Serialize;

use super::HarnessError;
use crate::families::{generate, FamilySpec};
use crate::graph::DistanceMatrix;
use crate::resolving::{representation, DistanceMultiset};

/// Computed representation of one vertex next to every closed form whose
/// zone contains it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub vertex: usize,
    pub label: String,
    pub computed: DistanceMultiset,
    /// `(rule, value)`; a value of `None` means the rule produced a
    /// negative distance.
    pub closed_forms: Vec<(String, Option<DistanceMultiset>)>,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        !self.closed_forms.is_empty()
            && self
                .closed_forms
                .iter()
                .all(|(_, v)| v.as_ref() == Some(&self.computed))
    }
}

fn triple(a: i64, b: i64, c: i64) -> Option<DistanceMultiset> {
    [a, b, c]
        .into_iter()
        .map(|x| u32::try_from(x).ok())
        .collect::<Option<Vec<u32>>>()
        .map(DistanceMultiset::from_unsorted)
}

/// Closed forms for vertex `v_i` of `C_n` with respect to `{v_0, v_1, v_3}`.
fn cycle_closed_forms(n: usize, i: usize) -> Vec<(String, Option<DistanceMultiset>)> {
    let t = (n / 2) as i64;
    let iv = i as i64;
    let mut out = Vec::new();
    let mut rule =
        |name: &str, value: Option<DistanceMultiset>| out.push((name.to_string(), value));
    match i {
        0 => rule("v_0", triple(0, 1, 3)),
        1 => rule("v_1", triple(0, 1, 2)),
        2 => rule("v_2", triple(1, 1, 2)),
        3 => rule("v_3", triple(0, 2, 3)),
        _ => {}
    }
    if 3 < iv && iv < t {
        rule("v_i (3<i<t)", triple(iv - 3, iv - 1, iv));
    }
    if iv == t {
        rule("v_t", triple(t - 3, t - 1, t));
    }
    if n.is_multiple_of(2) {
        if iv == t + 1 {
            rule("v_{t+1}", triple(t - 2, t - 1, t));
        }
        if iv == t + 2 {
            rule("v_{t+2}", triple(t - 2, t - 1, t - 1));
        }
        if iv == t + 3 {
            rule("v_{t+3}", triple(t - 3, t - 2, t));
        }
        let j = iv - t;
        if 3 < j && j < t {
            rule("v_{i+t} (3<i<t)", triple(t - j, t - j + 1, t - j + 3));
        }
    } else {
        if iv == t + 1 {
            rule("v_{t+1}", triple(t - 2, t, t));
        }
        if iv == t + 2 {
            rule("v_{t+2}", triple(t - 1, t - 1, t));
        }
        if iv == t + 3 {
            rule("v_{t+3}", triple(t - 2, t - 1, t));
        }
        if iv == t + 4 {
            rule("v_{t+4}", triple(t - 3, t - 2, t));
        }
        let j = iv - t - 1;
        if 3 < j && j < t {
            rule("v_{i+t+1} (3<i<t)", triple(t - j, t - j + 1, t - j + 3));
        }
    }
    out
}

/// Per-vertex comparison of BFS representations of `C_n` against the
/// closed forms, for `W = {0, 1, 3}`.
pub fn cycle_table(n: usize) -> Result<Vec<TableRow>, HarnessError> {
    if n < 6 {
        return Err(HarnessError::OutOfRange(format!(
            "cycle table needs n >= 6, got {n}"
        )));
    }
    let g = generate(&FamilySpec::Cycle { n }).expect("n >= 6");
    let d = DistanceMatrix::new(&g)?;
    let w = [0, 1, 3];
    (0..n)
        .map(|i| {
            Ok(TableRow {
                vertex: i,
                label: format!("v_{i}"),
                computed: representation(&d, i, &w)?,
                closed_forms: cycle_closed_forms(n, i),
            })
        })
        .collect()
}

/// Closed form for `v_{i,j}` (1-based) of `P_m □ P_n`.
fn grid_closed_form(i: usize, j: usize) -> (String, Option<DistanceMultiset>) {
    let (ii, jj) = (i as i64, j as i64);
    match (i, j) {
        (1, 1) => ("v_{1,1}".into(), triple(0, 1, 2)),
        (2, 1) => ("v_{2,1}".into(), triple(1, 1, 2)),
        (_, 1) => ("v_{i,1} (3<=i<=m)".into(), triple(ii - 3, ii - 1, ii)),
        (1, _) => ("v_{1,j} (2<=j<=n)".into(), triple(jj - 2, jj - 1, jj + 1)),
        (2, _) => ("v_{2,j} (2<=j<=n)".into(), triple(jj - 1, jj, jj)),
        _ => (
            "v_{i,j} (3<=i<=m, 2<=j<=n)".into(),
            triple(ii + jj - 4, ii + jj - 3, ii + jj - 2),
        ),
    }
}

/// Per-vertex comparison for `P_m □ P_n` with `W = {v_{1,1}, v_{1,2}, v_{3,1}}`.
pub fn grid_table(m: usize, n: usize) -> Result<Vec<TableRow>, HarnessError> {
    if m < 3 || n < 2 {
        return Err(HarnessError::OutOfRange(format!(
            "grid table needs m >= 3 and n >= 2, got {m}x{n}"
        )));
    }
    let g = generate(&FamilySpec::Grid { m, n }).expect("m >= 3, n >= 2");
    let d = DistanceMatrix::new(&g)?;
    let w = [0, 1, 2 * n];
    let mut rows = Vec::with_capacity(m * n);
    for i in 1..=m {
        for j in 1..=n {
            let id = (i - 1) * n + (j - 1);
            rows.push(TableRow {
                vertex: id,
                label: format!("v_{{{i},{j}}}"),
                computed: representation(&d, id, &w)?,
                closed_forms: vec![grid_closed_form(i, j)],
            });
        }
    }
    Ok(rows)
}
