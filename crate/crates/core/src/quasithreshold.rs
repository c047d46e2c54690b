//! Max-inside functionals Ω̃₀, Ω̃₁, edit distance to threshold graphs and a
//! diagnostic table for graph sequences.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{omega_max_subset, SubsetStrategy, Variant};
use crate::graph::{degree_order, CreationSequence, Graph, VertexOrder};
use crate::limits::Limits;
use crate::report::{ratio_to_f64, BoundKind, EditReport, FunctionalReport, Rational, Value};

/// `Σ_{v≺w} |N(v) ∖ N(w)|`.
fn tilde_sum(g: &Graph, order: &VertexOrder) -> i64 {
    let perm = order.as_slice();
    let mut s = 0i64;
    for (i, &v) in perm.iter().enumerate() {
        let rv = g.row(v);
        for &w in &perm[i + 1..] {
            let rw = g.row(w);
            s += rv.iter().zip(rw).map(|(a, b)| (a & !b).count_ones() as i64).sum::<i64>();
        }
    }
    s
}

fn cube(n: usize) -> i64 {
    (n as i64).pow(3).max(1)
}

/// `(1/n³) Σ_{v≺w} |N(v) ∖ (N(w) ∪ {w})|`.
pub fn omega_tilde0(g: &Graph, order: &VertexOrder) -> Rational {
    // w ∈ N(v) ∖ N(w) exactly when vw is an edge
    Rational::new(tilde_sum(g, order) - g.edge_count() as i64, cube(g.n()))
}

/// `(1/n³) Σ_{v≺w} |N(v) ∖ N(w)|`.
pub fn omega_tilde1(g: &Graph, order: &VertexOrder) -> Rational {
    Rational::new(tilde_sum(g, order), cube(g.n()))
}

/// Minimum of Ω̃₁ over orders, attained by the degree order.
pub fn omega_tilde_min(g: &Graph) -> FunctionalReport {
    let order = degree_order(g);
    FunctionalReport {
        value: Value::Rational(omega_tilde1(g, &order)),
        bound: BoundKind::Exact,
        order: Some(order),
        subset: None,
        method: "degree".into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EditStrategy {
    Exact,
    DpDegree,
    DpSearch,
}

impl fmt::Display for EditStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EditStrategy::Exact => "exact",
            EditStrategy::DpDegree => "dp_degree",
            EditStrategy::DpSearch => "dp_search",
        })
    }
}

impl FromStr for EditStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(EditStrategy::Exact),
            "dp_degree" => Ok(EditStrategy::DpDegree),
            "dp_search" => Ok(EditStrategy::DpSearch),
            _ => Err(Error::InvalidArgument(format!("unknown edit strategy `{s}`"))),
        }
    }
}

/// Cost of the `j`-th vertex (0-based) with `e` edges to its predecessors.
fn vertex_cost(j: usize, e: usize) -> usize {
    e.min(j - e)
}

/// Edges from every vertex to its predecessors under `perm`.
fn back_degrees(g: &Graph, perm: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; perm.len()];
    for (p, &v) in perm.iter().enumerate() {
        pos[v] = p;
    }
    perm.iter()
        .enumerate()
        .map(|(j, &v)| g.neighbors(v).filter(|&u| pos[u] < j).count())
        .collect()
}

/// Edit cost to the best threshold graph whose creation order is `perm`.
pub fn creation_order_cost(g: &Graph, perm: &[usize]) -> usize {
    back_degrees(g, perm)
        .into_iter()
        .enumerate()
        .map(|(j, e)| vertex_cost(j, e))
        .sum()
}

/// Best roles for a fixed creation order: join all predecessors iff that
/// is strictly cheaper.
fn witness_for(g: &Graph, perm: Vec<usize>) -> CreationSequence {
    let roles = back_degrees(g, &perm)
        .into_iter()
        .enumerate()
        .map(|(j, e)| j > 0 && 2 * e > j)
        .collect();
    CreationSequence::new(VertexOrder::new(perm).expect("permutation"), roles).expect("lengths")
}

/// Subset DP over predecessor sets: the cost of appending `u` to a prefix
/// `P` depends only on `P`.
fn exact_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let rows: Vec<u64> = g.row_masks();
    let size = 1usize << n;
    let mut best = vec![u32::MAX; size];
    let mut last = vec![u8::MAX; size];
    best[0] = 0;
    for p in 0..size {
        let b = best[p];
        if b == u32::MAX {
            continue;
        }
        let j = (p as u64).count_ones() as usize;
        let mut free = !(p as u64) & ((size as u64) - 1);
        while free != 0 {
            let u = free.trailing_zeros() as usize;
            free &= free - 1;
            let e = (rows[u] & p as u64).count_ones() as usize;
            let q = p | 1 << u;
            let c = b + vertex_cost(j, e) as u32;
            if c < best[q] || (c == best[q] && (u as u8) < last[q]) {
                best[q] = c;
                last[q] = u as u8;
            }
        }
    }
    let mut perm = Vec::with_capacity(n);
    let mut p = size - 1;
    while p != 0 {
        let u = last[p] as usize;
        perm.push(u);
        p &= !(1 << u);
    }
    perm.reverse();
    perm
}

/// Greedy peel: repeatedly take the vertex that is cheapest as the last
/// one created among those remaining; the creation order is the reverse.
fn peel_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg = g.degrees();
    let mut removed = Vec::with_capacity(n);
    for remaining in (1..=n).rev() {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v].min(remaining - 1 - deg[v]), v))
            .expect("a vertex remains");
        alive[v] = false;
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
        removed.push(v);
    }
    removed.reverse();
    removed
}

fn degree_candidates(g: &Graph) -> Vec<Vec<usize>> {
    let asc = degree_order(g).into_vec();
    let desc: Vec<usize> = {
        let deg = g.degrees();
        let mut p: Vec<usize> = (0..g.n()).collect();
        p.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        p
    };
    vec![asc, desc, peel_order(g)]
}

fn best_degree_order(g: &Graph) -> Vec<usize> {
    degree_candidates(g)
        .into_iter()
        .min_by_key(|p| creation_order_cost(g, p))
        .expect("three candidates")
}

/// Adjacent-transposition descent; swapping positions `p, p+1` changes
/// only the two back degrees involved.
fn search_order(g: &Graph, start: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut perm = start;
    let mut back = back_degrees(g, &perm);
    loop {
        let mut improved = false;
        for p in 0..n.saturating_sub(1) {
            let (u, v) = (perm[p], perm[p + 1]);
            let a = g.has_edge(u, v) as usize;
            let before = vertex_cost(p, back[p]) + vertex_cost(p + 1, back[p + 1]);
            // v moves to position p, u to p + 1
            let (bv, bu) = (back[p + 1] - a, back[p] + a);
            let after = vertex_cost(p, bv) + vertex_cost(p + 1, bu);
            if after < before {
                perm.swap(p, p + 1);
                back[p] = bv;
                back[p + 1] = bu;
                improved = true;
            }
        }
        if !improved {
            return perm;
        }
    }
}

/// Edit distance from `g` to the nearest threshold graph on the same
/// vertex set.
pub fn threshold_edit_distance(g: &Graph, strategy: EditStrategy, limits: &Limits) -> Result<EditReport> {
    let perm = match strategy {
        EditStrategy::Exact => {
            limits.check_subset("threshold edit scan", g.n())?;
            exact_order(g)
        }
        EditStrategy::DpDegree => best_degree_order(g),
        EditStrategy::DpSearch => search_order(g, best_degree_order(g)),
    };
    let distance = creation_order_cost(g, &perm);
    let bound = if strategy == EditStrategy::Exact || distance == 0 {
        BoundKind::Exact
    } else {
        BoundKind::UpperBound
    };
    Ok(EditReport {
        distance,
        witness: witness_for(g, perm),
        bound,
        method: strategy.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticRow {
    pub index: usize,
    pub n: usize,
    pub omega_tilde0: f64,
    pub omega_tilde1: f64,
    /// `2 δ_E / n²` with `δ_E` from the descent heuristic.
    pub edit_density: f64,
    pub omega2_degree: f64,
    pub flag: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub rows: Vec<DiagnosticRow>,
    /// Ω̃₁ column trends to zero.
    pub tilde_to_zero: bool,
    /// Edit density column trends to zero.
    pub edit_to_zero: bool,
}

pub const DIAGNOSTIC_HEADER: &str = "index,n,omega_tilde0,omega_tilde1,edit_density,omega2_degree,flag";

impl Diagnostic {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(DIAGNOSTIC_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.index, r.n, r.omega_tilde0, r.omega_tilde1, r.edit_density, r.omega2_degree, r.flag
            ));
        }
        out
    }
}

/// Heuristic: least squares of `value` against `1/n` must have positive
/// slope and intercept at most 0.01.
pub fn trends_to_zero(points: &[(usize, f64)]) -> bool {
    let xs: Vec<f64> = points.iter().map(|&(n, _)| 1.0 / n as f64).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if points.len() < 2 || sxx == 0.0 {
        return false;
    }
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| (x - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    slope > 0.0 && my - slope * mx <= 0.01
}

/// Per-graph Ω̃₀ (degree order), min Ω̃₁, edit density and Ω₂ at the
/// degree order (exact subsets within the limit, otherwise local search),
/// plus sequence trend flags.
pub fn quasithreshold_diagnostic(graphs: &[Graph], limits: &Limits) -> Result<Diagnostic> {
    if graphs.windows(2).any(|w| w[0].n() > w[1].n()) {
        return Err(Error::InvalidArgument("graph sizes must be nondecreasing".into()));
    }
    let mut rows: Vec<DiagnosticRow> = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let n = g.n();
            let order = degree_order(g);
            let subsets = if n <= limits.exact_subset {
                SubsetStrategy::Exact
            } else {
                SubsetStrategy::LocalSearch
            };
            let o2 = omega_max_subset(g, &order, Variant::Omega2, subsets, limits)?;
            let edit = threshold_edit_distance(g, EditStrategy::DpSearch, limits)?;
            Ok(DiagnosticRow {
                index,
                n,
                omega_tilde0: ratio_to_f64(omega_tilde0(g, &order)),
                omega_tilde1: ratio_to_f64(omega_tilde1(g, &order)),
                edit_density: 2.0 * edit.distance as f64 / (n.max(1) * n.max(1)) as f64,
                omega2_degree: o2.value_f64(),
                flag: String::new(),
            })
        })
        .collect::<Result<_>>()?;
    let col = |f: fn(&DiagnosticRow) -> f64| -> Vec<(usize, f64)> {
        rows.iter().map(|r| (r.n, f(r))).collect()
    };
    let tilde_to_zero = trends_to_zero(&col(|r| r.omega_tilde1));
    let edit_to_zero = trends_to_zero(&col(|r| r.edit_density));
    let flag = format!("i={};iii={}", tilde_to_zero as u8, edit_to_zero as u8);
    for r in &mut rows {
        r.flag = flag.clone();
    }
    Ok(Diagnostic {
        rows,
        tilde_to_zero,
        edit_to_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{gnp, kmm_graph, random_threshold, Seed};

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn tilde_examples() {
        let k3 = Graph::complete(3);
        for p in [[0, 1, 2], [2, 0, 1]] {
            let o = VertexOrder::new(p.to_vec()).unwrap();
            assert_eq!(omega_tilde0(&k3, &o), r(0, 1));
            assert_eq!(omega_tilde1(&k3, &o), r(1, 9));
        }
        let e = Graph::empty(5);
        assert_eq!(omega_tilde1(&e, &VertexOrder::identity(5)), r(0, 1));
        assert_eq!(omega_tilde0(&e, &VertexOrder::identity(5)), r(0, 1));
        assert_eq!(omega_tilde_min(&kmm_graph(2)).rational(), Some(r(1, 8)));
    }

    #[test]
    fn threshold_graphs_have_zero_tilde0_and_edit() {
        for s in 0..20 {
            let n = 1 + s as usize;
            let g = random_threshold(n, Seed(s));
            let cs = crate::graph::is_threshold(&g).unwrap();
            assert_eq!(omega_tilde0(&g, &cs.nested_order()), r(0, 1));
            assert!(ratio_to_f64(omega_tilde_min(&g).rational().unwrap()) <= 1.0 / n as f64);
            for st in [EditStrategy::DpDegree, EditStrategy::DpSearch] {
                assert_eq!(threshold_edit_distance(&g, st, &lim()).unwrap().distance, 0);
            }
            if n <= 12 {
                assert_eq!(threshold_edit_distance(&g, EditStrategy::Exact, &lim()).unwrap().distance, 0);
            }
        }
    }

    #[test]
    fn edit_examples() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        for g in [c4, path(4), two_k2] {
            let rep = threshold_edit_distance(&g, EditStrategy::Exact, &lim()).unwrap();
            assert_eq!(rep.distance, 1);
            let h = crate::graph::threshold_from_creation(&rep.witness);
            assert_eq!(h.edit_distance(&g), 1);
            assert!(crate::graph::is_threshold(&h).is_some());
        }
    }

    #[test]
    fn heuristics_bound_exact() {
        for s in 0..30 {
            let g = gnp(9, 0.5, Seed(s)).unwrap();
            let ex = threshold_edit_distance(&g, EditStrategy::Exact, &lim()).unwrap().distance;
            let dd = threshold_edit_distance(&g, EditStrategy::DpDegree, &lim()).unwrap();
            let ds = threshold_edit_distance(&g, EditStrategy::DpSearch, &lim()).unwrap();
            assert!(ex <= ds.distance && ds.distance <= dd.distance);
            let h = crate::graph::threshold_from_creation(&ds.witness);
            assert_eq!(h.edit_distance(&g), ds.distance);
        }
    }

    #[test]
    fn edit_size_limit() {
        let g = Graph::empty(23);
        assert!(threshold_edit_distance(&g, EditStrategy::Exact, &lim()).is_err());
        assert_eq!(threshold_edit_distance(&g, EditStrategy::DpSearch, &lim()).unwrap().distance, 0);
    }

    #[test]
    fn trend_flags() {
        assert!(trends_to_zero(&[(10, 0.1), (20, 0.05), (40, 0.025)]));
        assert!(!trends_to_zero(&[(10, 0.125), (20, 0.125), (40, 0.125)]));
        assert!(!trends_to_zero(&[(10, 0.1)]));
    }

    #[test]
    fn diagnostic_on_threshold_and_random_sequences() {
        let th: Vec<Graph> = [10, 20, 40].iter().map(|&n| random_threshold(n, Seed(n as u64))).collect();
        let d = quasithreshold_diagnostic(&th, &lim()).unwrap();
        assert!(d.rows.iter().all(|r| r.omega_tilde0 == 0.0 && r.edit_density == 0.0));
        assert!(d.to_csv().starts_with(DIAGNOSTIC_HEADER));
        let rnd: Vec<Graph> = [20, 40, 80].iter().map(|&n| gnp(n, 0.5, Seed(n as u64)).unwrap()).collect();
        let d = quasithreshold_diagnostic(&rnd, &lim()).unwrap();
        assert!(!d.tilde_to_zero);
        assert_eq!(d.rows[0].flag, "i=0;iii=0");
        assert!(quasithreshold_diagnostic(&[Graph::empty(3), Graph::empty(2)], &lim()).is_err());
    }
}
