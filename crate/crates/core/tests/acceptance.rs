//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines are always shown.
//! Set `MDIM_ACCEPTANCE_N7=1` to extend the bound scan to order 7 (minutes).

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mdim::graph::{major_vertex_report, twin_partition};
use mdim::harness::{
    canonical_mask, cycle_table, graph_from_mask, grid_table, pair_count, run_suite,
    scan_small_graphs, suite_families, CheckStatus, MdKey, SuiteConfig,
};
use mdim::resolving::{f_lower_bound, infinite_certificates, is_m_resolving};
use mdim::search::exhaustive_md;
use mdim::{
    compute_dim, compute_md, generate, verify_witness, witness_for, DistanceMatrix, FamilySpec,
    Graph, InfiniteCertificate, ResolveOutcome, SearchConfig,
};

fn within(start: Instant, limit: Duration, what: &str) {
    let took = start.elapsed();
    assert!(took < limit, "{what} took {took:?}, limit {limit:?}");
}

fn finite(outcome: &ResolveOutcome) -> (usize, Vec<usize>) {
    match outcome {
        ResolveOutcome::Finite { value, witness } => (*value, witness.clone()),
        other => panic!("expected a finite md, got {other}"),
    }
}

fn cap(n: usize) -> SearchConfig {
    SearchConfig {
        max_vertices: n,
        ..SearchConfig::default()
    }
}

fn paths() -> String {
    let start = Instant::now();
    for n in 1..=12 {
        let g = generate(&FamilySpec::Path { n }).unwrap();
        let (value, witness) = finite(&compute_md(&g, &SearchConfig::default()).unwrap());
        assert_eq!(value, 1, "md(P{n})");
        assert_eq!(witness.len(), 1);
        assert!(
            g.degree(witness[0]) <= 1,
            "P{n} witness {witness:?} is not a pendant"
        );
        assert!(verify_witness(&g, &witness).unwrap().multiset.resolving);
    }
    within(start, Duration::from_secs(1), "paths");
    "md(P_n) = 1 with a pendant witness for n = 1..12".into()
}

fn no_md_two() -> String {
    let start = Instant::now();
    let mut examined = 0;
    for n in 4..=6 {
        let report = scan_small_graphs(n, false, &SearchConfig::default()).unwrap();
        assert!(
            !report.md_histogram.contains_key(&MdKey::Finite(2)),
            "order {n}"
        );
        examined += report.graphs_connected;
        // unpruned search on one graph per isomorphism class
        for mask in 0..1u32 << pair_count(n) {
            if canonical_mask(n, mask) != mask {
                continue;
            }
            let g = graph_from_mask(n, mask);
            let Ok(d) = DistanceMatrix::new(&g) else {
                continue;
            };
            let least = exhaustive_md(&d, &SearchConfig::serial()).unwrap();
            assert_ne!(least.map(|w| w.len()), Some(2), "{g}");
        }
    }
    within(start, Duration::from_secs(60), "scans");
    format!("no md = 2 among {examined} labeled connected graphs of order 4..6")
}

fn cycles() -> String {
    for n in 3..=12 {
        let start = Instant::now();
        let g = generate(&FamilySpec::Cycle { n }).unwrap();
        let outcome = compute_md(&g, &SearchConfig::default()).unwrap();
        if n <= 5 {
            assert_eq!(
                outcome,
                ResolveOutcome::Infinite {
                    certificate: InfiniteCertificate::DiameterTwoNonPath
                },
                "C{n}"
            );
        } else {
            assert_eq!(finite(&outcome).0, 3, "md(C{n})");
            assert_eq!(
                witness_for(&FamilySpec::Cycle { n }).unwrap(),
                vec![0, 1, 3]
            );
            assert!(
                verify_witness(&g, &[0, 1, 3]).unwrap().multiset.resolving,
                "C{n}"
            );
        }
        within(start, Duration::from_secs(1), &format!("C{n}"));
    }
    "C3..C5 infinite (diameter 2), md(C_n) = 3 for n = 6..12 with {0,1,3}".into()
}

fn cycle_tables() -> String {
    let mut rows = 0;
    for n in 6..=13 {
        for row in cycle_table(n).unwrap() {
            assert!(row.matches(), "C{n} vertex {}: {row:?}", row.vertex);
            rows += 1;
        }
    }
    let report = run_suite(&SuiteConfig::default());
    for n in 6..=13 {
        assert_eq!(
            report.get(&format!("table:cycle:{n}")).unwrap().status,
            CheckStatus::Pass
        );
    }
    format!("{rows} cycle vertices match the even/odd closed forms for n = 6..13")
}

fn grids() -> String {
    let start = Instant::now();
    for m in 3..=5 {
        for n in 2..=5 {
            let g = generate(&FamilySpec::Grid { m, n }).unwrap();
            assert_eq!(
                finite(&compute_md(&g, &cap(25)).unwrap()).0,
                3,
                "md(P{m} x P{n})"
            );
            for row in grid_table(m, n).unwrap() {
                assert!(row.matches(), "grid {m}x{n} {}: {row:?}", row.label);
            }
        }
    }
    within(start, Duration::from_secs(5), "grids");
    "md(P_m x P_n) = 3 and all closed forms match for 3 <= m <= 5, 2 <= n <= 5".into()
}

fn binary_trees() -> String {
    for (h, expected) in [(2, 3), (3, 7)] {
        let start = Instant::now();
        let spec = FamilySpec::KAryTree { k: 2, h };
        let g = generate(&spec).unwrap();
        assert_eq!(g.n(), (1 << (h + 1)) - 1);
        assert_eq!(
            finite(&compute_md(&g, &SearchConfig::default()).unwrap()).0,
            expected,
            "h = {h}"
        );
        let w = witness_for(&spec).unwrap();
        assert_eq!(w.len(), expected);
        assert!(
            verify_witness(&g, &w).unwrap().multiset.resolving,
            "h = {h}"
        );
        within(
            start,
            Duration::from_secs(10),
            &format!("binary tree h = {h}"),
        );
    }
    "md = 3 (h = 2) and 7 (h = 3), witnesses verified".into()
}

fn ternary_tree() -> String {
    let start = Instant::now();
    let g = generate(&FamilySpec::KAryTree { k: 3, h: 2 }).unwrap();
    let outcome = compute_md(&g, &SearchConfig::default()).unwrap();
    assert!(
        matches!(outcome.certificate(), Some(InfiniteCertificate::LargeTwinClass { class }) if class.len() == 3),
        "{outcome}"
    );
    let d = DistanceMatrix::new(&g).unwrap();
    assert_eq!(exhaustive_md(&d, &SearchConfig::default()).unwrap(), None);
    within(start, Duration::from_secs(30), "exhaustive cross-check");
    "KAryTree(3,2) infinite by twin class, no resolving subset among all 2^13".into()
}

fn counterexample_tree() -> String {
    let start = Instant::now();
    let g = generate(&FamilySpec::CounterexampleTree).unwrap();
    assert_eq!(g.n(), 10);
    let d = DistanceMatrix::new(&g).unwrap();
    let tp = twin_partition(&g).unwrap();
    assert!(infinite_certificates(&g, &d, &tp).is_empty());
    let outcome = compute_md(&g, &SearchConfig::default()).unwrap();
    assert_eq!(
        outcome.certificate(),
        Some(&InfiniteCertificate::ExhaustiveSearch)
    );
    assert_eq!(exhaustive_md(&d, &SearchConfig::default()).unwrap(), None);
    within(start, Duration::from_secs(1), "counterexample tree");
    "no detector fires, exhaustive search proves md infinite".into()
}

fn subdivided_stars() -> String {
    for (n, p) in [(3, 2), (4, 3), (4, 4), (5, 4)] {
        let g = generate(&FamilySpec::SubdividedStar { n, p }).unwrap();
        assert_eq!(
            compute_dim(&g, &SearchConfig::default()).unwrap().value,
            n - 1,
            "dim K1,{n}^({p})"
        );
    }
    let spec = FamilySpec::SubdividedStar { n: 4, p: 3 };
    let g = generate(&spec).unwrap();
    assert_eq!(
        finite(&compute_md(&g, &SearchConfig::default()).unwrap()).0,
        3
    );
    // vertex at distance b on branch b, b = 1..3
    let w = witness_for(&spec).unwrap();
    assert_eq!(w, vec![1, 5, 9]);
    assert!(verify_witness(&g, &w).unwrap().multiset.resolving);

    let report = run_suite(&SuiteConfig::default());
    let probe = report.get("probe:substar:3x2").unwrap();
    assert_eq!(probe.status, CheckStatus::Finding);
    let witness = probe.details["exhaustive_witness"]
        .as_array()
        .expect("finite md");
    assert!(witness.len() >= 3);
    assert_eq!(probe.details["claimed"], 2);
    assert!(report.findings().any(|c| c.check_id == "probe:substar:3x2"));
    format!(
        "dim = n - 1 on all four, md(K1,4^(3)) = 3 via {{1,5,9}}, K1,3^(2) has md {} (flagged)",
        witness.len()
    )
}

/// Independent pass over every connected graph of order `n`.
fn check_bounds(n: usize) -> usize {
    let mut count = 0;
    for mask in 0..1u32 << pair_count(n) {
        let g: Graph = graph_from_mask(n, mask);
        let Ok(d) = DistanceMatrix::new(&g) else {
            continue;
        };
        count += 1;
        let tp = twin_partition(&g).unwrap();
        let mr = major_vertex_report(&g, &d);
        let dim = compute_dim(&g, &SearchConfig::serial()).unwrap().value;
        assert!(dim + mr.ex >= mr.sigma, "dim >= sigma - ex on {g}");
        let outcome = compute_md(&g, &SearchConfig::serial()).unwrap();
        match &outcome {
            ResolveOutcome::Finite { value, witness } => {
                assert!(*value >= dim, "md >= dim on {g}");
                assert!(
                    *value >= f_lower_bound(n, d.diameter() as usize),
                    "md >= f on {g}"
                );
                assert!(*value < n, "md <= n - 1 on {g}");
                assert!(is_m_resolving(&d, witness).unwrap().resolving);
                for pair in tp.pairs() {
                    let hit = pair.iter().filter(|v| witness.contains(v)).count();
                    assert_eq!(hit, 1, "twin pair {pair:?} on {g}");
                }
            }
            ResolveOutcome::Infinite { certificate } => {
                if *certificate != InfiniteCertificate::ExhaustiveSearch {
                    assert_eq!(
                        exhaustive_md(&d, &SearchConfig::serial()).unwrap(),
                        None,
                        "{certificate} on {g}"
                    );
                }
            }
            ResolveOutcome::Aborted { reason } => panic!("{reason}"),
        }
    }
    count
}

fn bound_scan() -> String {
    let top = if std::env::var_os("MDIM_ACCEPTANCE_N7").is_some() {
        7
    } else {
        6
    };
    let mut graphs = 0;
    for n in 2..=top {
        let report = scan_small_graphs(n, false, &SearchConfig::default()).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(
            report.detector_confirmed, report.detector_certified,
            "order {n}"
        );
        let conjecture = report
            .conjecture_findings
            .iter()
            .find(|c| c.claim == "md-at-most-n-minus-1")
            .unwrap();
        assert!(conjecture.holds, "order {n}: {}", conjecture.details);
        graphs += report.graphs_connected;
        if n <= 6 {
            assert_eq!(check_bounds(n) as u64, report.labeled_connected);
        }
    }
    let gated = if top == 6 {
        "; order 7 skipped, set MDIM_ACCEPTANCE_N7=1"
    } else {
        ""
    };
    format!("all bounds hold on {graphs} labeled connected graphs of order 2..{top}{gated}")
}

fn determinism() -> String {
    let mut compared = 0;
    for spec in suite_families() {
        let g = generate(&spec).unwrap();
        let one = compute_md(
            &g,
            &SearchConfig {
                max_vertices: 25,
                ..SearchConfig::with_workers(1)
            },
        )
        .unwrap();
        let many = compute_md(
            &g,
            &SearchConfig {
                max_vertices: 25,
                ..SearchConfig::with_workers(8)
            },
        )
        .unwrap();
        let serial = compute_md(
            &g,
            &SearchConfig {
                max_vertices: 25,
                ..SearchConfig::serial()
            },
        )
        .unwrap();
        assert_eq!(one, many, "{spec}");
        assert_eq!(one, serial, "{spec}");
        assert!(!matches!(one, ResolveOutcome::Aborted { .. }), "{spec}");
        compared += 1;
    }
    format!("serial, 1 worker and 8 workers agree on all {compared} family instances")
}

fn non_monotone() -> String {
    let g = generate(&FamilySpec::Path { n: 4 }).unwrap();
    let d = DistanceMatrix::new(&g).unwrap();
    assert!(is_m_resolving(&d, &[0]).unwrap().resolving);
    assert!(!is_m_resolving(&d, &[0, 3]).unwrap().resolving);
    "{0} resolves P4, {0,3} does not".into()
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("paths", paths),
        ("no md = 2", no_md_two),
        ("cycles", cycles),
        ("cycle tables", cycle_tables),
        ("grids", grids),
        ("binary trees", binary_trees),
        ("k >= 3 trees", ternary_tree),
        ("counterexample tree", counterexample_tree),
        ("subdivided stars", subdivided_stars),
        ("bound scan", bound_scan),
        ("determinism", determinism),
        ("non-monotonicity", non_monotone),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.2}s) {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s) {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
