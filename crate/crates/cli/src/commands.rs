//! Subcommand bodies. Each returns a [`Report`] holding both the JSON value
//! and the human-readable text, plus the process exit code.

use std::fmt;
use std::fmt::Write as _;

use latref_core::exact::{IntMatrix, Integer, Rational};
use latref_core::knapsack::{frobenius_exact, frobenius_lower_bound, width_bounds, Decomposition};
use latref_core::lattice::{kernel_and_solution, KernelStrategy};
use latref_core::reformulate::{build_extended, detect_decomposition, split_basis, EqualitySystem, SplitPolicy};
use latref_core::solver::{
    bnb_feasibility, compare_formulations, default_priority, gen_market_split, BnbConfig, BnbResult, BnbStatus,
};
use latref_core::Error;
use serde_json::{json, Value};

use crate::instance::{emit_instance, InstanceError};
use crate::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Instance(InstanceError),
    Core(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Infeasible { .. }) => EXIT_INFEASIBLE,
            CliError::Core(Error::Resource(_)) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Instance(e) => e.fmt(f),
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        CliError::Instance(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

/// `--s K` wins over `--ratio R`; neither means the default ratio 100.
pub fn split_policy(s: Option<usize>, ratio: Option<&str>) -> CliResult<SplitPolicy> {
    match (s, ratio) {
        (Some(s), _) => Ok(SplitPolicy::FixedS(s)),
        (None, Some(r)) => {
            let r: Rational = r.trim().parse().map_err(|_| CliError::Usage(format!("invalid ratio `{r}`")))?;
            Ok(SplitPolicy::Ratio(r))
        }
        (None, None) => Ok(SplitPolicy::default()),
    }
}

fn infeasible(command: &str, scale_k: &Integer) -> Report {
    Report {
        json: json!({ "command": command, "lattice_feasible": false, "scale_k": json::int(scale_k) }),
        text: format!("no integer solution: A x = {scale_k} b is the first solvable multiple\n"),
        code: EXIT_INFEASIBLE,
    }
}

fn format_matrix(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let widths: Vec<usize> = (0..m.cols()).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        writeln!(out, "  {}", line.join(" ")).unwrap();
    }
    out
}

fn format_vec(v: &[Integer]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn decomposition_json(d: &Decomposition) -> Value {
    json!({
        "M1": json::int(d.m1()),
        "M2": json::int(d.m2()),
        "p1": json::ints(d.p1()),
        "p2": json::ints(d.p2()),
        "q1": json::int(d.q1()),
        "q2": json::int(d.q2()),
        "rescaled": d.rescaled(),
    })
}

pub fn reformulate(sys: &EqualitySystem, policy: &SplitPolicy) -> CliResult<Report> {
    let det = match detect_decomposition(sys, policy) {
        Err(Error::Infeasible { scale_k }) => return Ok(infeasible("reformulate", &scale_k)),
        other => other?,
    };
    let ef = &det.formulation;
    let json = json!({
        "command": "reformulate",
        "lattice_feasible": true,
        "m": sys.m(),
        "n": sys.n(),
        "r": det.split.r(),
        "s": ef.s(),
        "P": json::matrix(&ef.p),
        "M": json::matrix(&ef.m),
        "T": json::matrix(&ef.t),
        "S": json::matrix(&ef.long),
        "x0": json::ints(&ef.x0),
        "Px0": json::ints(&ef.px0),
        "rescaled_by": json::opt(ef.rescaled_by.as_ref(), json::matrix),
        "decomposition": json::opt(det.decomposition.as_ref(), decomposition_json),
    });
    let mut text = format!("s = {} (r = {})\n", ef.s(), det.split.r());
    write!(text, "P =\n{}M =\n{}T =\n{}", format_matrix(&ef.p), format_matrix(&ef.m), format_matrix(&ef.t)).unwrap();
    writeln!(text, "x0 = {}", format_vec(&ef.x0)).unwrap();
    if let Some(d) = &ef.rescaled_by {
        write!(text, "P was rescaled by D^-1 with D =\n{}", format_matrix(d)).unwrap();
    }
    if let Some(d) = &det.decomposition {
        writeln!(text, "a = {} p1 + {} p2", d.m1(), d.m2()).unwrap();
    }
    Ok(Report { json, text, code: EXIT_OK })
}

fn require_knapsack(sys: &EqualitySystem, command: &str) -> CliResult<()> {
    if sys.m() != 1 {
        return Err(CliError::Usage(format!("{command} needs a single-row knapsack instance, got m = {}", sys.m())));
    }
    Ok(())
}

fn find_decomposition(sys: &EqualitySystem, policy: &SplitPolicy) -> CliResult<Decomposition> {
    let det = detect_decomposition(sys, policy)?;
    det.decomposition.ok_or_else(|| {
        CliError::Usage(format!(
            "no two-generator decomposition: the split gave s = {} (need s = 1 and positive coefficients)",
            det.split.s()
        ))
    })
}

pub fn width(sys: &EqualitySystem, b: Option<Integer>, policy: &SplitPolicy) -> CliResult<Report> {
    require_knapsack(sys, "width")?;
    let sys = match b {
        Some(b) => sys.with_rhs(vec![b])?,
        None => sys.clone(),
    };
    let b = sys.b()[0].clone();
    let d = find_decomposition(&sys, policy)?;
    let w = width_bounds(&d);
    let bq = Rational::from_integer(b.clone());
    let upper = (&bq * &w.zbar).floor().to_integer();
    let lower = (&bq * &w.zlower).ceil().to_integer();
    let raw = &upper - &lower + 1;
    let width = w.width(&b);
    let json = json!({
        "command": "width",
        "b": json::int(&b),
        "decomposition": decomposition_json(&d),
        "j": w.j,
        "k": w.k,
        "zbar": json::rational(&w.zbar),
        "zlower": json::rational(&w.zlower),
        "floor_upper": json::int(&upper),
        "ceil_lower": json::int(&lower),
        "raw": json::int(&raw),
        "width": json::int(&width),
    });
    let text = format!(
        "a = {} p1 + {} p2, j = {}, k = {}\nmu range = [{} b, {} b]\nwidth = {upper} - ({lower}) + 1 = {raw}, clamped {width}\n",
        d.m1(),
        d.m2(),
        w.j,
        w.k,
        w.zlower,
        w.zbar
    );
    Ok(Report { json, text, code: EXIT_OK })
}

pub fn frobenius_bound(sys: &EqualitySystem, policy: &SplitPolicy) -> CliResult<Report> {
    require_knapsack(sys, "frobenius-bound")?;
    let d = find_decomposition(sys, policy)?;
    let fb = frobenius_lower_bound(&d);
    let failed: Vec<&str> = fb.failed.iter().map(|a| a.label()).collect();
    let json = json!({
        "command": "frobenius-bound",
        "decomposition": decomposition_json(&d),
        "case": fb.case.as_str(),
        "value": json::opt(fb.value.as_ref(), json::rational),
        "floor": json::opt(fb.floor.as_ref(), json::int),
        "failed": failed,
    });
    let text = match (&fb.value, &fb.floor) {
        (Some(v), Some(f)) => format!("F(a) >= {v} (floor {f}), case {}\n", fb.case.as_str()),
        _ => format!("no bound: assumptions {} fail, case {}\n", failed.join(", "), fb.case.as_str()),
    };
    Ok(Report { json, text, code: EXIT_OK })
}

pub fn frobenius(sys: &EqualitySystem) -> CliResult<Report> {
    require_knapsack(sys, "frobenius-exact")?;
    let a = sys.a().row(0);
    let f = frobenius_exact(a)?;
    let json = json!({ "command": "frobenius-exact", "a": json::ints(a), "frobenius": json::int(&f) });
    Ok(Report { json, text: format!("F(a) = {f}\n"), code: EXIT_OK })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    Original,
    Ahl,
    Extended,
}

impl Formulation {
    pub fn as_str(self) -> &'static str {
        match self {
            Formulation::Original => "orig",
            Formulation::Ahl => "ahl",
            Formulation::Extended => "ext",
        }
    }
}

fn status_code(status: &BnbStatus) -> i32 {
    match status {
        BnbStatus::Feasible { .. } => EXIT_OK,
        BnbStatus::Infeasible => EXIT_INFEASIBLE,
        BnbStatus::NodeLimit => EXIT_RESOURCE,
    }
}

pub fn solve(sys: &EqualitySystem, formulation: Formulation, policy: &SplitPolicy, node_limit: u64) -> CliResult<Report> {
    let cfg = BnbConfig { node_limit, ..BnbConfig::default() };
    let kernel = kernel_and_solution(sys.a(), sys.b(), KernelStrategy::default())?;
    if !kernel.feasible {
        return Ok(infeasible("solve", &kernel.scale_k));
    }
    let dim = sys.n() - sys.m();
    let (s, result): (Option<usize>, BnbResult) = match formulation {
        Formulation::Original => (None, bnb_feasibility(sys, None, &cfg)?),
        Formulation::Ahl => {
            let ef = build_extended(sys, &split_basis(&kernel.kernel, &SplitPolicy::FixedS(dim))?, &kernel.x0)?;
            let order = default_priority(sys.n(), Some(&ef))[..dim].to_vec();
            let cfg = BnbConfig { branch_priority: Some(order), node_limit };
            (Some(dim), bnb_feasibility(sys, Some(&ef), &cfg)?)
        }
        Formulation::Extended => {
            let ef = build_extended(sys, &split_basis(&kernel.kernel, policy)?, &kernel.x0)?;
            (Some(ef.s()), bnb_feasibility(sys, Some(&ef), &cfg)?)
        }
    };
    let (x, mu) = match &result.status {
        BnbStatus::Feasible { x, mu } => (Some(x), Some(mu)),
        _ => (None, None),
    };
    let json = json!({
        "command": "solve",
        "lattice_feasible": true,
        "formulation": formulation.as_str(),
        "s": s,
        "status": result.status.as_str(),
        "nodes": result.nodes,
        "proof_depth": result.proof_depth,
        "x": json::opt(x, |v| json::ints(v)),
        "mu": json::opt(mu, |v| json::ints(v)),
    });
    let mut text = format!(
        "formulation {}{}: {}, nodes {}, depth {}\n",
        formulation.as_str(),
        s.map_or(String::new(), |s| format!(" s={s}")),
        result.status.as_str(),
        result.nodes,
        result.proof_depth
    );
    if let Some(x) = x {
        writeln!(text, "x = {}", format_vec(x)).unwrap();
    }
    Ok(Report { json, text, code: status_code(&result.status) })
}

pub fn compare(sys: &EqualitySystem, s_values: &[usize], node_limit: u64) -> CliResult<Report> {
    let cfg = BnbConfig { node_limit, ..BnbConfig::default() };
    let c = match compare_formulations(sys, s_values, &cfg) {
        Err(Error::Infeasible { scale_k }) => return Ok(infeasible("compare", &scale_k)),
        other => other?,
    };
    let rows: Vec<Value> = c
        .rows
        .iter()
        .map(|r| {
            json!({
                "formulation": r.label,
                "s": r.s,
                "status": r.status.as_str(),
                "nodes": r.nodes,
                "proof_depth": r.proof_depth,
            })
        })
        .collect();
    let json = json!({ "command": "compare", "lattice_feasible": true, "rows": rows, "agree": c.agree(), "complete": c.complete() });

    let mut table = vec![["formulation", "s", "status", "nodes", "depth"].map(String::from).to_vec()];
    for r in &c.rows {
        table.push(vec![
            r.label.clone(),
            r.s.map_or("-".into(), |s| s.to_string()),
            r.status.as_str().into(),
            r.nodes.to_string(),
            r.proof_depth.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..5).map(|j| table.iter().map(|r| r[j].len()).max().unwrap()).collect();
    let mut text = String::new();
    for row in &table {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(text, "{}", cells.join("  ").trim_end()).unwrap();
    }
    if !c.agree() {
        text.push_str("warning: formulations disagree\n");
    }
    Ok(Report { json, text, code: EXIT_OK })
}

pub fn market_split(m: usize, seed: u64) -> CliResult<String> {
    let sys = gen_market_split(m, seed)?;
    let body = emit_instance(&sys).map_err(CliError::Usage)?;
    Ok(format!("# market split m={m} seed={seed}\n{body}"))
}
