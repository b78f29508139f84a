//! File formats: graph JSON and edge-list text, trajectory CSV, and the JSON
//! sidecars written next to it.

use std::fmt::Write as _;

use merg_core::sim::Trajectory;
use merg_core::{AgentRole, Graph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] merg_core::Error),
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// `{"n":N,"edges":[[u,v],...]}` with `u < v`, pairs in lexicographic order.
pub fn graph_to_json(g: &Graph) -> String {
    let file = GraphFile {
        n: g.n(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&file).expect("graph serializes")
}

/// Accepts graph JSON or edge-list text (first line `n`, then one `u v`
/// pair per line; blank lines and `#` comments are skipped).
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    if text.trim_start().starts_with('{') {
        let file: GraphFile = serde_json::from_str(text)?;
        return Ok(Graph::new(file.n, file.edges.iter().map(|e| (e[0], e[1])))?);
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |line, msg: &str| ParseError::EdgeList {
        line,
        msg: msg.to_string(),
    };
    let (line, first) = lines.next().ok_or_else(|| bad(1, "missing node count"))?;
    let n: usize = first.parse().map_err(|_| bad(line, "node count is not an integer"))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(bad(line, "expected `u v`")),
        }
    }
    Ok(Graph::new(n, edges)?)
}

/// C `%.17g` rendering: shortest of fixed or exponent notation with 17
/// significant digits and trailing zeros stripped.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (16 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Header `t,node_0,...,node_{n-1}` and one row per step.
pub fn trajectory_csv(tr: &Trajectory) -> String {
    let n = tr.roles.len();
    let mut out = String::from("t");
    for i in 0..n {
        write!(out, ",node_{i}").unwrap();
    }
    out.push('\n');
    for (t, row) in tr.states.iter().enumerate() {
        write!(out, "{t}").unwrap();
        for &x in row {
            out.push(',');
            out.push_str(&format_g17(x));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct RolesFile<'a> {
    roles: &'a [AgentRole],
    #[serde(rename = "F")]
    f: usize,
}

/// `{"roles":[...],"F":k}`
pub fn roles_json(roles: &[AgentRole], f: usize) -> String {
    serde_json::to_string(&RolesFile { roles, f }).expect("roles serialize")
}
