//! Text and JSON formats for graphs and step kernels.
//!
//! Graph text: `n m`, then `m` lines `u v` (0-indexed). Graph JSON:
//! `{"n": .., "edges": [[u, v], ..]}`. Kernel JSON: `{"k": .., "weights":
//! [..] (optional, equal if absent), "values": [[..], ..]}`. Kernel text: `k`,
//! then `k` rows of `k` values on equal parts. Lines starting with `#` are
//! ignored in the text formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::StepKernel;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn is_json(s: &str) -> bool {
    s.trim_start().starts_with('{')
}

fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let g = Graph::from_edges(n, edges).map_err(|e| parse_err(e.to_string()))?;
    if g.edge_count() != edges.len() {
        return Err(parse_err("duplicate edge"));
    }
    Ok(g)
}

pub fn parse_graph_text(s: &str) -> Result<Graph> {
    let mut lines = content_lines(s);
    let (ln, head) = lines.next().ok_or_else(|| parse_err("empty graph file"))?;
    let nums = |ln: usize, l: &str| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(format!("line {ln}: bad integer `{t}`"))))
            .collect()
    };
    let h = nums(ln, head)?;
    let [n, m] = h[..] else {
        return Err(parse_err(format!("line {ln}: expected `n m`")));
    };
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let e = nums(ln, l)?;
        let [u, v] = e[..] else {
            return Err(parse_err(format!("line {ln}: expected `u v`")));
        };
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(format!("header says {m} edges, found {}", edges.len())));
    }
    build_graph(n, &edges)
}

pub fn graph_to_text(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_graph_json(s: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
    build_graph(j.n, &edges)
}

pub fn graph_to_json(g: &Graph) -> String {
    let j = GraphJson {
        n: g.n(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&j).expect("serializable")
}

/// Either graph format, told apart by a leading `{`.
pub fn parse_graph(s: &str) -> Result<Graph> {
    if is_json(s) {
        parse_graph_json(s)
    } else {
        parse_graph_text(s)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelJson {
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    values: Vec<Vec<f64>>,
}

fn build_kernel(k: usize, weights: Option<Vec<f64>>, rows: Vec<Vec<f64>>) -> Result<StepKernel> {
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(parse_err(format!("expected {k} rows of {k} values")));
    }
    let values: Vec<f64> = rows.into_iter().flatten().collect();
    match weights {
        Some(w) => StepKernel::new(w, values),
        None => StepKernel::with_equal_weights(k, values),
    }
    .map_err(|e| parse_err(e.to_string()))
}

pub fn parse_kernel_json(s: &str) -> Result<StepKernel> {
    let j: KernelJson = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    build_kernel(j.k, j.weights, j.values)
}

pub fn kernel_to_json(w: &StepKernel) -> String {
    let k = w.k();
    let j = KernelJson {
        k,
        weights: (!w.has_equal_weights()).then(|| w.weights().to_vec()),
        values: (0..k).map(|i| w.row(i).to_vec()).collect(),
    };
    serde_json::to_string(&j).expect("serializable")
}

pub fn parse_kernel_text(s: &str) -> Result<StepKernel> {
    let mut lines = content_lines(s);
    let (ln, head) = lines.next().ok_or_else(|| parse_err("empty kernel file"))?;
    let k: usize = head
        .parse()
        .map_err(|_| parse_err(format!("line {ln}: expected part count")))?;
    let rows = lines
        .map(|(ln, l)| {
            l.split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| parse_err(format!("line {ln}: bad value `{t}`"))))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    build_kernel(k, None, rows)
}

/// Text grid; only kernels on equal parts can be written this way.
pub fn kernel_to_text(w: &StepKernel) -> Result<String> {
    if !w.has_equal_weights() {
        return Err(Error::InvalidArgument("text grid needs equal part weights".into()));
    }
    let k = w.k();
    let mut out = format!("{k}\n");
    for i in 0..k {
        let row: Vec<String> = w.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_kernel(s: &str) -> Result<StepKernel> {
    if is_json(s) {
        parse_kernel_json(s)
    } else {
        parse_kernel_text(s)
    }
}
