//! Command-line front end.
//!
//! Exit codes: 0 success (an infinite dimension is a successful answer),
//! 1 usage error, 2 invalid or disconnected graph, 3 search aborted by the
//! vertex cap, 4 the scan or suite found a bound violation.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::families::{expected_md, generate, witness_for, FamilyError, FamilySpec};
use crate::graph::{major_vertex_report, twin_partition, DistanceMatrix, Graph, GraphError};
use crate::harness::{
    cycle_table, grid_table, run_suite, scan_small_graphs, HarnessError, SuiteConfig, TableRow,
};
use crate::resolving::{f_lower_bound, infinite_certificates, md_lower_bound};
use crate::search::{
    compute_dim, compute_md, format_set, verify_witness, ResolveOutcome, SearchConfig, SearchError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_GRAPH: i32 = 2;
pub const EXIT_ABORTED: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Graph(GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

/// Parses the edge-list format: `#` comment lines, an optional first data
/// line `n=<count>`, then one `u v` pair per line. Without `n=` the order
/// is one more than the largest id.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if seen_data {
                return Err(syntax(line_no, "n= must be the first data line"));
            }
            declared = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| syntax(line_no, format!("bad vertex count {rest:?}")))?,
            );
            seen_data = true;
            continue;
        }
        seen_data = true;
        let mut parts = line.split_whitespace();
        let mut id = |what: &str| -> Result<usize, ParseError> {
            let tok = parts
                .next()
                .ok_or_else(|| syntax(line_no, format!("missing {what} vertex")))?;
            tok.parse()
                .map_err(|_| syntax(line_no, format!("bad vertex id {tok:?}")))
        };
        let (u, v) = (id("first")?, id("second")?);
        if parts.next().is_some() {
            return Err(syntax(line_no, "expected exactly two vertex ids"));
        }
        edges.push((line_no, u, v));
    }
    let n = match declared {
        Some(n) => n,
        None => edges
            .iter()
            .map(|&(_, u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0),
    };
    if n == 0 {
        return Err(syntax(0, "graph has no vertices"));
    }
    let mut seen = HashSet::new();
    for &(line, u, v) in &edges {
        let err = |e| ParseError {
            line,
            kind: ParseErrorKind::Graph(e),
        };
        if u >= n || v >= n {
            return Err(err(GraphError::VertexOutOfRange { u, v, n }));
        }
        if u == v {
            return Err(err(GraphError::LoopEdge { u, v }));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(GraphError::DuplicateEdge { u, v }));
        }
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(_, u, v)| (u, v)).collect();
    Graph::new(n, &pairs).map_err(|e| ParseError {
        line: 0,
        kind: ParseErrorKind::Graph(e),
    })
}

/// Edge-list text for a graph, readable by [`parse_edge_list`].
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if (1..=crate::search::MAX_SEARCH_VERTICES).contains(&n) => Ok(n),
        _ => Err(format!(
            "expected an integer in 1..={}",
            crate::search::MAX_SEARCH_VERTICES
        )),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mdim",
    version,
    about = "Exact multiset dimension and metric dimension of small graphs"
)]
pub struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the search (1 runs serially).
    #[arg(long, global = true, value_name = "K")]
    pub parallel: Option<usize>,
    /// Largest graph order handled by exhaustive search [default: 24, 25
    /// for suite].
    #[arg(long, global = true, value_name = "N", value_parser = parse_cap)]
    pub max_vertices: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Edge-list file.
    pub file: Option<PathBuf>,
    /// Family spec such as cycle:9 or grid:4x5.
    #[arg(long, value_name = "SPEC", conflicts_with = "file")]
    pub family: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyAction {
    Emit,
    Md,
    Witness,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the multiset dimension.
    Md(Input),
    /// Compute the metric dimension.
    Dim(Input),
    /// Check a vertex set and list every representation.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex ids.
        #[arg(long, value_name = "IDS")]
        set: String,
    },
    /// Lower bounds, structure and infiniteness detectors.
    Bounds(Input),
    /// Generate a family instance and act on it.
    Family {
        spec: String,
        #[arg(long, value_enum, default_value_t = FamilyAction::Emit)]
        action: FamilyAction,
    },
    /// Closed-form representation tables against BFS (all, cycle:N, grid:MxN).
    Tables {
        #[arg(default_value = "all")]
        selector: String,
    },
    /// Scan every connected graph of one order.
    Scan {
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// One graph per isomorphism class.
        #[arg(long)]
        dedup: bool,
        /// Required for n = 7 (about two million labeled graphs).
        #[arg(long)]
        allow_slow: bool,
    },
    /// Run every reproduction check and print the findings report.
    Suite {
        /// Largest scanned order.
        #[arg(long, default_value_t = 6)]
        scan_n: usize,
        /// Scan labeled graphs instead of isomorphism classes.
        #[arg(long)]
        no_dedup: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        CliOutput {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

impl Cli {
    fn search_config_with(&self, base: SearchConfig) -> SearchConfig {
        let mut cfg = SearchConfig {
            max_vertices: self.max_vertices.unwrap_or(base.max_vertices),
            ..base
        };
        if let Some(k) = self.parallel {
            cfg.parallel = k > 1;
            cfg.workers = Some(k.max(1));
        }
        cfg
    }

    fn search_config(&self) -> SearchConfig {
        self.search_config_with(SearchConfig::default())
    }
}

fn load(input: &Input) -> Result<(String, Graph), CliOutput> {
    match (&input.file, &input.family) {
        (_, Some(spec)) => {
            let spec: FamilySpec = spec.parse().map_err(family_failure)?;
            Ok((spec.to_string(), generate(&spec).map_err(family_failure)?))
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliOutput::fail(EXIT_USAGE, format!("cannot read {}: {e}\n", path.display()))
            })?;
            let g = parse_edge_list(&text).map_err(|e| {
                CliOutput::fail(EXIT_INVALID_GRAPH, format!("{}: {e}\n", path.display()))
            })?;
            Ok((path.display().to_string(), g))
        }
        (None, None) => Err(CliOutput::fail(
            EXIT_USAGE,
            "give an edge-list file or --family <spec>\n".into(),
        )),
    }
}

fn family_failure(e: FamilyError) -> CliOutput {
    let code = match e {
        FamilyError::InvalidParameter(_) => EXIT_INVALID_GRAPH,
        _ => EXIT_USAGE,
    };
    CliOutput::fail(code, format!("{e}\n"))
}

fn graph_failure(e: GraphError) -> CliOutput {
    CliOutput::fail(EXIT_INVALID_GRAPH, format!("{e}\n"))
}

fn emit(json_mode: bool, value: serde_json::Value, text: String) -> String {
    if json_mode {
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn md_output(cli: &Cli, name: &str, g: &Graph) -> CliOutput {
    let outcome = match compute_md(g, &cli.search_config()) {
        Ok(o) => o,
        Err(e) => return graph_failure(e),
    };
    let code = if matches!(outcome, ResolveOutcome::Aborted { .. }) {
        EXIT_ABORTED
    } else {
        EXIT_OK
    };
    let stdout = emit(
        cli.json,
        json!({ "command": "md", "input": name, "n": g.n(), "outcome": outcome }),
        format!("{outcome}\n"),
    );
    CliOutput {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn dim_output(cli: &Cli, name: &str, g: &Graph) -> CliOutput {
    match compute_dim(g, &cli.search_config()) {
        Ok(b) => CliOutput::ok(emit(
            cli.json,
            json!({ "command": "dim", "input": name, "n": g.n(), "value": b.value, "witness": b.witness }),
            format!("dim = {}, basis = {}\n", b.value, format_set(&b.witness)),
        )),
        Err(SearchError::Aborted(reason)) => CliOutput {
            code: EXIT_ABORTED,
            stdout: emit(
                cli.json,
                json!({ "command": "dim", "input": name, "n": g.n(), "aborted": reason }),
                format!("aborted: {reason}\n"),
            ),
            stderr: String::new(),
        },
        Err(SearchError::Graph(e)) => graph_failure(e),
    }
}

fn parse_set(s: &str) -> Result<Vec<usize>, String> {
    let ids: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| format!("bad vertex id {t:?} in --set"))
        })
        .collect::<Result<_, _>>()?;
    let distinct: HashSet<usize> = ids.iter().copied().collect();
    if distinct.len() != ids.len() {
        return Err("--set lists a vertex twice".into());
    }
    Ok(ids)
}

fn verify_output(cli: &Cli, name: &str, g: &Graph, set: &str) -> CliOutput {
    let ids = match parse_set(set) {
        Ok(ids) => ids,
        Err(e) => return CliOutput::fail(EXIT_USAGE, format!("{e}\n")),
    };
    let r = match verify_witness(g, &ids) {
        Ok(r) => r,
        Err(e) => return graph_failure(e),
    };
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!("set = {}\n", format_set(&r.witness));
    let _ = write!(text, "m-resolving: {}", yes(r.multiset.resolving));
    if let Some((u, v, rep)) = &r.multiset.first_collision {
        let _ = write!(text, " ({u} and {v} both have {rep})");
    }
    let _ = write!(text, "\nmetric-resolving: {}", yes(r.metric.resolving));
    if let Some((u, v, rep)) = &r.metric.first_collision {
        let _ = write!(text, " ({u} and {v} both have {rep:?})");
    }
    text.push('\n');
    for (v, (m, vec)) in r.representations.iter().zip(&r.vectors).enumerate() {
        let _ = writeln!(text, "{v}: {m} {vec:?}");
    }
    CliOutput::ok(emit(
        cli.json,
        json!({ "command": "verify", "input": name, "n": g.n(), "report": r }),
        text,
    ))
}

fn bounds_output(cli: &Cli, name: &str, g: &Graph) -> CliOutput {
    let d = match DistanceMatrix::new(g) {
        Ok(d) => d,
        Err(e) => return graph_failure(e),
    };
    let tp = match twin_partition(g) {
        Ok(tp) => tp,
        Err(e) => return graph_failure(e),
    };
    let mr = major_vertex_report(g, &d);
    let lb = md_lower_bound(g, &d, &tp, &mr);
    let certs = infinite_certificates(g, &d, &tp);
    let diam = d.diameter();
    let f = (diam >= 1).then(|| f_lower_bound(g.n(), diam as usize));
    let mut text = format!(
        "n = {}, edges = {}, diameter = {diam}, path = {}\n",
        g.n(),
        g.edge_count(),
        g.is_path()
    );
    let _ = writeln!(
        text,
        "sigma = {}, ex = {}, majors = {:?}",
        mr.sigma, mr.ex, mr.majors
    );
    let _ = writeln!(text, "twin classes: {:?}", tp.classes());
    if let Some(f) = f {
        let _ = writeln!(text, "f(n, d) = {f}");
    }
    let _ = writeln!(text, "md lower bound = {}", lb.value);
    for (kind, v) in &lb.contributions {
        let mark = if *v == lb.value { " *" } else { "" };
        let _ = writeln!(text, "  {kind}: {v}{mark}");
    }
    if certs.is_empty() {
        text.push_str("infiniteness detectors: none apply\n");
    } else {
        for c in &certs {
            let _ = writeln!(text, "infiniteness detector: {c}");
        }
    }
    CliOutput::ok(emit(
        cli.json,
        json!({
            "command": "bounds",
            "input": name,
            "n": g.n(),
            "edges": g.edge_count(),
            "diameter": diam,
            "is_path": g.is_path(),
            "majors": mr,
            "twin_classes": tp.classes(),
            "f": f,
            "lower_bound": lb,
            "achieved_by": lb.achieved_by(),
            "certificates": certs,
        }),
        text,
    ))
}

fn family_output(cli: &Cli, spec: &str, action: FamilyAction) -> CliOutput {
    let spec: FamilySpec = match spec.parse() {
        Ok(s) => s,
        Err(e) => return family_failure(e),
    };
    let g = generate(&spec).expect("validated spec");
    let name = spec.to_string();
    match action {
        FamilyAction::Emit => CliOutput::ok(emit(
            cli.json,
            json!({ "command": "family", "spec": name, "n": g.n(), "edges": g.edges(),
                    "expected_md": expected_md(&spec).expect("validated") }),
            format!("# {name}\n{}", format_edge_list(&g)),
        )),
        FamilyAction::Md => md_output(cli, &name, &g),
        FamilyAction::Witness => match witness_for(&spec) {
            Ok(w) => {
                let r = verify_witness(&g, &w).expect("families are connected");
                CliOutput::ok(emit(
                    cli.json,
                    json!({ "command": "family", "spec": name, "witness": w,
                            "m_resolving": r.multiset.resolving }),
                    format!(
                        "witness = {}, m-resolving: {}\n",
                        format_set(&w),
                        if r.multiset.resolving { "yes" } else { "no" }
                    ),
                ))
            }
            Err(e) => CliOutput::ok(emit(
                cli.json,
                json!({ "command": "family", "spec": name, "witness": null }),
                format!("{e}\n"),
            )),
        },
    }
}

fn table_json(rows: &[TableRow]) -> serde_json::Value {
    json!(rows
        .iter()
        .map(
            |r| json!({ "vertex": r.vertex, "label": r.label, "computed": r.computed,
                         "closed_forms": r.closed_forms, "matches": r.matches() })
        )
        .collect::<Vec<_>>())
}

fn tables_output(cli: &Cli, selector: &str) -> CliOutput {
    let mut tables: Vec<(String, Result<Vec<TableRow>, HarnessError>)> = Vec::new();
    let bad = || CliOutput::fail(EXIT_USAGE, format!("unknown table selector {selector:?}\n"));
    match selector.split_once(':') {
        None if selector == "all" => {
            tables.extend((6..=13).map(|n| (format!("cycle:{n}"), cycle_table(n))));
            for m in 3..=5 {
                tables.extend((2..=5).map(|n| (format!("grid:{m}x{n}"), grid_table(m, n))));
            }
        }
        Some(("cycle", n)) => match n.parse() {
            Ok(n) => tables.push((format!("cycle:{n}"), cycle_table(n))),
            Err(_) => return bad(),
        },
        Some(("grid", mn)) => match mn.split_once('x').map(|(a, b)| (a.parse(), b.parse())) {
            Some((Ok(m), Ok(n))) => tables.push((format!("grid:{m}x{n}"), grid_table(m, n))),
            _ => return bad(),
        },
        _ => return bad(),
    }
    let mut text = String::new();
    let mut out = Vec::new();
    for (name, rows) in tables {
        let rows = match rows {
            Ok(rows) => rows,
            Err(e) => return CliOutput::fail(EXIT_USAGE, format!("{name}: {e}\n")),
        };
        let mismatches = rows.iter().filter(|r| !r.matches()).count();
        let _ = writeln!(
            text,
            "{name}: {} vertices, {mismatches} mismatches",
            rows.len()
        );
        for r in &rows {
            let forms: Vec<String> = r
                .closed_forms
                .iter()
                .map(|(rule, v)| {
                    format!(
                        "{rule} = {}",
                        v.as_ref().map_or("negative".into(), |m| m.to_string())
                    )
                })
                .collect();
            let _ = writeln!(
                text,
                "  {:<10} {:<12} {} {}",
                r.label,
                r.computed.to_string(),
                if r.matches() { "ok  " } else { "DIFF" },
                forms.join("; ")
            );
        }
        out.push(json!({ "table": name, "mismatches": mismatches, "rows": table_json(&rows) }));
    }
    CliOutput::ok(emit(
        cli.json,
        json!({ "command": "tables", "tables": out }),
        text,
    ))
}

fn scan_output(cli: &Cli, n: usize, dedup: bool, allow_slow: bool) -> CliOutput {
    if n == 7 && !allow_slow {
        return CliOutput::fail(
            EXIT_USAGE,
            "scanning n = 7 takes minutes; pass --allow-slow\n".into(),
        );
    }
    let (report, code) = match scan_small_graphs(n, dedup, &cli.search_config()) {
        Ok(r) => (r, EXIT_OK),
        Err(HarnessError::BoundViolation(r)) => (*r, EXIT_VIOLATION),
        Err(e) => return CliOutput::fail(EXIT_USAGE, format!("{e}\n")),
    };
    let mut text = format!(
        "order {n}: {} labeled graphs, {} connected, {} examined{}\n",
        report.graphs_total,
        report.labeled_connected,
        report.graphs_connected,
        if dedup {
            " (one per isomorphism class)"
        } else {
            ""
        }
    );
    let hist: Vec<String> = report
        .md_histogram
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect();
    let _ = writeln!(text, "md histogram: {}", hist.join(", "));
    let dims: Vec<String> = report
        .dim_histogram
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect();
    let _ = writeln!(text, "dim histogram: {}", dims.join(", "));
    let _ = writeln!(
        text,
        "diameter <= 2 fraction: {:.4}",
        report.diameter2_fraction
    );
    let _ = writeln!(
        text,
        "detector certificates confirmed by exhaustion: {}/{}",
        report.detector_confirmed, report.detector_certified
    );
    for c in &report.conjecture_findings {
        let _ = writeln!(text, "{}: {}", c.claim, c.details);
    }
    for (k, g) in &report.spectrum {
        let _ = writeln!(text, "  md {k} example: {g}");
    }
    let _ = writeln!(text, "violations: {}", report.violations.len());
    for v in &report.violations {
        let _ = writeln!(text, "  {}: {} on {}", v.claim, v.details, v.graph);
    }
    CliOutput {
        code,
        stdout: emit(
            cli.json,
            json!({ "command": "scan", "report": report }),
            text,
        ),
        stderr: String::new(),
    }
}

fn suite_output(cli: &Cli, scan_n: usize, no_dedup: bool) -> CliOutput {
    if !(2..=7).contains(&scan_n) {
        return CliOutput::fail(EXIT_USAGE, "--scan-n must be in 2..=7\n".into());
    }
    let base = SuiteConfig::default();
    let cfg = SuiteConfig {
        search: cli.search_config_with(base.search.clone()),
        scan_max_n: scan_n,
        dedup: !no_dedup,
        ..base
    };
    let report = run_suite(&cfg);
    CliOutput {
        code: if report.has_violations() {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        },
        stdout: emit(cli.json, json!(report.checks), format!("{report}\n")),
        stderr: String::new(),
    }
}

pub fn run(cli: &Cli) -> CliOutput {
    let with_input = |input: &Input, f: &dyn Fn(&str, &Graph) -> CliOutput| match load(input) {
        Ok((name, g)) => f(&name, &g),
        Err(out) => out,
    };
    match &cli.command {
        Command::Md(input) => with_input(input, &|name, g| md_output(cli, name, g)),
        Command::Dim(input) => with_input(input, &|name, g| dim_output(cli, name, g)),
        Command::Verify { input, set } => {
            with_input(input, &|name, g| verify_output(cli, name, g, set))
        }
        Command::Bounds(input) => with_input(input, &|name, g| bounds_output(cli, name, g)),
        Command::Family { spec, action } => family_output(cli, spec, *action),
        Command::Tables { selector } => tables_output(cli, selector),
        Command::Scan {
            n,
            dedup,
            allow_slow,
        } => scan_output(cli, *n, *dedup, *allow_slow),
        Command::Suite { scan_n, no_dedup } => suite_output(cli, *scan_n, *no_dedup),
    }
}

/// Parses arguments and runs; help and version requests exit 0, other
/// argument errors exit 1.
pub fn run_args<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                CliOutput::fail(EXIT_USAGE, text)
            } else {
                CliOutput::ok(text)
            }
        }
    }
}
