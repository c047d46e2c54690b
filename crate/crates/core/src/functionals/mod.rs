//! Quasimonotonicity functionals Ω₀..Ω₃ of a graph: values at a fixed
//! (order, subset), maxima over subsets and minima over orders.
//!
//! Ω₀, Ω₁ and Ω₂ are exact rationals over `n³`; Ω₃ is an `ε` whose `ε·n²` is
//! always an integer, so it is reported as a rational over `n²`.

pub(crate) mod orders;
pub(crate) mod scan;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{degree_order, twin_predecessors, Graph, VertexOrder, VertexSet};
use crate::limits::Limits;
use crate::report::{BoundKind, FunctionalReport, Rational, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Omega0,
    Omega1,
    Omega2,
    Omega3,
}

impl Variant {
    pub fn from_index(j: u8) -> Result<Self> {
        match j {
            0 => Ok(Variant::Omega0),
            1 => Ok(Variant::Omega1),
            2 => Ok(Variant::Omega2),
            3 => Ok(Variant::Omega3),
            _ => Err(Error::InvalidArgument(format!("variant must be 0..3, got {j}"))),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetStrategy {
    Exact,
    LocalSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderStrategy {
    Exact,
    Degree,
    OrderSearch,
}

impl FromStr for SubsetStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SubsetStrategy::Exact),
            "local_search" | "local-search" => Ok(SubsetStrategy::LocalSearch),
            _ => Err(Error::InvalidArgument(format!("unknown subset strategy {s:?}"))),
        }
    }
}

impl FromStr for OrderStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(OrderStrategy::Exact),
            "degree" => Ok(OrderStrategy::Degree),
            "order_search" | "order-search" => Ok(OrderStrategy::OrderSearch),
            _ => Err(Error::InvalidArgument(format!("unknown order strategy {s:?}"))),
        }
    }
}

impl fmt::Display for SubsetStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubsetStrategy::Exact => "exact",
            SubsetStrategy::LocalSearch => "local_search",
        })
    }
}

impl fmt::Display for OrderStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderStrategy::Exact => "exact",
            OrderStrategy::Degree => "degree",
            OrderStrategy::OrderSearch => "order_search",
        })
    }
}

/// Σ_{p<q} (y_p − y_q)₊ for small nonnegative integers.
pub(crate) fn pair_sum(y: &[i64]) -> i64 {
    let n = y.len();
    if n < 64 {
        let mut s = 0;
        for p in 0..n {
            for q in p + 1..n {
                s += (y[p] - y[q]).max(0);
            }
        }
        return s;
    }
    // Fenwick trees over values: counts and sums of the earlier entries.
    let top = y.iter().copied().max().unwrap_or(0).max(0) as usize + 2;
    let mut cnt = vec![0i64; top + 1];
    let mut sum = vec![0i64; top + 1];
    let (mut seen, mut seen_sum, mut total) = (0i64, 0i64, 0i64);
    for &v in y {
        // entries with value ≤ v
        let (mut c, mut s) = (0i64, 0i64);
        let mut i = v as usize + 1;
        while i > 0 {
            c += cnt[i];
            s += sum[i];
            i &= i - 1;
        }
        total += (seen_sum - s) - v * (seen - c);
        let mut i = v as usize + 1;
        while i <= top {
            cnt[i] += 1;
            sum[i] += v;
            i += i & i.wrapping_neg();
        }
        seen += 1;
        seen_sum += v;
    }
    total
}

fn cube(n: usize) -> i64 {
    (n as i64).pow(3)
}

/// Objective in integer form: numerator over `n³` (variants 0..2) or
/// `ε·n²` (variant 3), given `x[v] = e(v, A)`.
fn objective_from_counts(
    g: &Graph,
    perm: &[usize],
    set: &VertexSet,
    x: &[i64],
    variant: Variant,
) -> i64 {
    let n = perm.len();
    let y: Vec<i64> = perm.iter().map(|&v| x[v]).collect();
    match variant {
        Variant::Omega1 => pair_sum(&y),
        Variant::Omega2 => {
            let yc: Vec<i64> = perm.iter().map(|&v| g.degree(v) as i64 - x[v]).collect();
            pair_sum(&y) + pair_sum(&yc)
        }
        Variant::Omega0 => {
            let mut s = 0;
            for p in 0..n {
                let v = perm[p];
                for q in p + 1..n {
                    let w = perm[q];
                    let mut d = y[p] - y[q];
                    if g.has_edge(v, w) {
                        d += set.contains(v) as i64 - set.contains(w) as i64;
                    }
                    s += d.max(0);
                }
            }
            s
        }
        Variant::Omega3 => {
            let mut hist = vec![0i64; n + 1];
            for p in 0..n {
                for q in p + 1..n {
                    let d = y[p] - y[q];
                    if d > 0 {
                        hist[d as usize] += 1;
                    }
                }
            }
            scan::omega3_key(&hist, n)
        }
    }
}

fn counts(g: &Graph, set: &VertexSet) -> Vec<i64> {
    (0..g.n()).map(|v| g.degree_count(v, set) as i64).collect()
}

fn objective_at(g: &Graph, order: &VertexOrder, set: &VertexSet, variant: Variant) -> i64 {
    check_sizes(g, order, set);
    objective_from_counts(g, order.as_slice(), set, &counts(g, set), variant)
}

fn check_sizes(g: &Graph, order: &VertexOrder, set: &VertexSet) {
    assert_eq!(order.len(), g.n(), "order length differs from vertex count");
    assert_eq!(set.universe(), g.n(), "subset universe differs from vertex count");
}

fn to_rational(value: i64, n: usize, variant: Variant) -> Rational {
    if n <= 1 {
        return Rational::from_integer(0);
    }
    match variant {
        Variant::Omega3 => Rational::new(value, (n as i64).pow(2)),
        _ => Rational::new(value, cube(n)),
    }
}

/// Ω₀(G,≺,A) = n⁻³ Σ_{v≺w} (e(v, A∖{v,w}) − e(w, A∖{v,w}))₊.
pub fn omega0_at(g: &Graph, order: &VertexOrder, set: &VertexSet) -> Rational {
    to_rational(objective_at(g, order, set, Variant::Omega0), g.n(), Variant::Omega0)
}

/// Ω₁(G,≺,A) = n⁻³ Σ_{v≺w} (e(v,A) − e(w,A))₊.
pub fn omega1_at(g: &Graph, order: &VertexOrder, set: &VertexSet) -> Rational {
    to_rational(objective_at(g, order, set, Variant::Omega1), g.n(), Variant::Omega1)
}

/// Ω₂(G,≺,A) = Ω₁(G,≺,A) + Ω₁(G,≺,V∖A).
pub fn omega2_at(g: &Graph, order: &VertexOrder, set: &VertexSet) -> Rational {
    to_rational(objective_at(g, order, set, Variant::Omega2), g.n(), Variant::Omega2)
}

/// Smallest `ε` such that at most `εn²` pairs `v≺w` have
/// `e(v,A) > e(w,A) + εn`.
pub fn omega3_at(g: &Graph, order: &VertexOrder, set: &VertexSet) -> f64 {
    crate::report::ratio_to_f64(omega3_at_exact(g, order, set))
}

/// [`omega3_at`] as an exact rational over `n²`.
pub fn omega3_at_exact(g: &Graph, order: &VertexOrder, set: &VertexSet) -> Rational {
    to_rational(objective_at(g, order, set, Variant::Omega3), g.n(), Variant::Omega3)
}

pub fn omega_at(g: &Graph, order: &VertexOrder, set: &VertexSet, variant: Variant) -> Rational {
    to_rational(objective_at(g, order, set, variant), g.n(), variant)
}

/// Neighbourhood masks in position space; needs `n ≤ 64`.
pub(crate) fn position_rows(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = g.n();
    assert!(n <= 64);
    let mut rows = vec![0u64; n];
    for p in 0..n {
        for q in 0..n {
            if g.has_edge(perm[p], perm[q]) {
                rows[p] |= 1 << q;
            }
        }
    }
    rows
}

fn mask_to_vertices(mask: u64, perm: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = (0..perm.len())
        .filter(|&p| (mask >> p) & 1 == 1)
        .map(|p| perm[p])
        .collect();
    out.sort_unstable();
    out
}

/// Exact subset maximum at a fixed order: (integer objective, witness).
pub(crate) fn exact_subset_max(g: &Graph, perm: &[usize], variant: Variant) -> (i64, Vec<usize>) {
    let rows = position_rows(g, perm);
    let (v, mask) = scan::exact_max(&rows, variant);
    (v, mask_to_vertices(mask, perm))
}

/// Multi-start single-flip hill climbing over subsets. Starts: ∅, V, vertex
/// neighbourhoods and prefixes of the degree order (thinned for large `n`).
pub(crate) fn local_search_max(g: &Graph, perm: &[usize], variant: Variant) -> (i64, Vec<usize>) {
    let n = g.n();
    let by_degree = degree_order(g);
    let picks: Vec<usize> = if n <= 32 {
        (0..n).collect()
    } else {
        let m = 12;
        (0..m).map(|i| i * (n - 1) / (m - 1)).collect()
    };
    let mut starts: Vec<VertexSet> = vec![VertexSet::empty(n), VertexSet::full(n)];
    for &i in &picks {
        starts.push(g.neighborhood(by_degree.vertex_at(i)));
    }
    for &t in &picks {
        if t > 0 {
            let prefix = by_degree.as_slice()[..t].iter().copied();
            starts.push(VertexSet::from_vertices(n, prefix).expect("prefix in range"));
        }
    }
    let max_passes = if n <= 32 { usize::MAX } else { 8 };

    let mut best: Option<(i64, VertexSet)> = None;
    for mut set in starts {
        let mut x = counts(g, &set);
        let mut cur = objective_from_counts(g, perm, &set, &x, variant);
        let mut passes = 0;
        loop {
            let mut improved = false;
            for z in 0..n {
                let delta = if set.contains(z) { -1 } else { 1 };
                set.toggle(z);
                for u in g.neighbors(z) {
                    x[u] += delta;
                }
                let v = objective_from_counts(g, perm, &set, &x, variant);
                if v > cur {
                    cur = v;
                    improved = true;
                } else {
                    set.toggle(z);
                    for u in g.neighbors(z) {
                        x[u] -= delta;
                    }
                }
            }
            passes += 1;
            if !improved || passes >= max_passes {
                break;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| cur > *b) {
            best = Some((cur, set));
        }
    }
    let (v, set) = best.expect("at least one start");
    (v, set.to_vec())
}

fn zero_report(n: usize, method: &str) -> FunctionalReport {
    FunctionalReport {
        value: Value::Rational(Rational::from_integer(0)),
        bound: BoundKind::Exact,
        order: Some(VertexOrder::identity(n)),
        subset: Some(Vec::new()),
        method: method.to_string(),
    }
}

/// max_A Ω_j(G,≺,A). Exact scans every subset; local search reports a
/// lower bound.
pub fn omega_max_subset(
    g: &Graph,
    order: &VertexOrder,
    variant: Variant,
    strategy: SubsetStrategy,
    limits: &Limits,
) -> Result<FunctionalReport> {
    let n = g.n();
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "order has {} entries for {n} vertices",
            order.len()
        )));
    }
    if n <= 1 {
        let mut r = zero_report(n, &strategy.to_string());
        r.order = Some(order.clone());
        return Ok(r);
    }
    let (value, subset, bound) = match strategy {
        SubsetStrategy::Exact => {
            limits.check_subset("subset scan", n)?;
            let (v, s) = exact_subset_max(g, order.as_slice(), variant);
            (v, s, BoundKind::Exact)
        }
        SubsetStrategy::LocalSearch => {
            let (v, s) = local_search_max(g, order.as_slice(), variant);
            (v, s, BoundKind::LowerBound)
        }
    };
    Ok(FunctionalReport {
        value: Value::Rational(to_rational(value, n, variant)),
        bound,
        order: Some(order.clone()),
        subset: Some(subset),
        method: strategy.to_string(),
    })
}

/// Integer subset maximum at an order for the given strategy.
fn subset_value(g: &Graph, perm: &[usize], variant: Variant, strategy: SubsetStrategy) -> i64 {
    match strategy {
        SubsetStrategy::Exact => exact_subset_max(g, perm, variant).0,
        SubsetStrategy::LocalSearch => local_search_max(g, perm, variant).0,
    }
}

/// Adjacent-transposition descent from `start`, steepest improvement.
pub(crate) fn descend_orders<T: PartialOrd + Copy>(
    start: Vec<usize>,
    mut eval: impl FnMut(&[usize]) -> T,
) -> (T, Vec<usize>) {
    let mut cur = start;
    let mut val = eval(&cur);
    loop {
        let mut best: Option<(T, usize)> = None;
        for p in 0..cur.len().saturating_sub(1) {
            cur.swap(p, p + 1);
            let v = eval(&cur);
            cur.swap(p, p + 1);
            if v < val && best.is_none_or(|(b, _)| v < b) {
                best = Some((v, p));
            }
        }
        match best {
            Some((v, p)) => {
                cur.swap(p, p + 1);
                val = v;
            }
            None => return (val, cur),
        }
    }
}

/// min_≺ max_A Ω_j(G,≺,A).
///
/// `Exact` runs a branch and bound over all orders with exact subset
/// maxima. `Degree` evaluates the degree order (exact for Ω₂, otherwise an
/// upper bound within a factor 2 for Ω₀, Ω₁). `OrderSearch` descends by
/// adjacent transpositions from the degree order (upper bound). With
/// `LocalSearch` subsets the value is a lower bound on Ω_j at the reported
/// order.
pub fn omega_min_order(
    g: &Graph,
    variant: Variant,
    strategy: OrderStrategy,
    subset: SubsetStrategy,
    limits: &Limits,
) -> Result<FunctionalReport> {
    let n = g.n();
    if n <= 1 {
        return Ok(zero_report(n, &strategy.to_string()));
    }
    if subset == SubsetStrategy::Exact || strategy == OrderStrategy::Exact {
        limits.check_subset("subset scan", n)?;
    }
    let start = degree_order(g).into_vec();
    let (order, bound, method) = match strategy {
        OrderStrategy::Exact => {
            limits.check_order("order scan", n)?;
            (exact_min_order(g, variant), BoundKind::Exact, "exact".to_string())
        }
        OrderStrategy::Degree => {
            let bound = match (subset, variant) {
                (SubsetStrategy::LocalSearch, _) => BoundKind::LowerBound,
                (_, Variant::Omega2) => BoundKind::Exact,
                _ => BoundKind::UpperBound,
            };
            (start, bound, format!("degree+{subset}"))
        }
        OrderStrategy::OrderSearch => {
            let (_, o) = descend_orders(start, |p| subset_value(g, p, variant, subset));
            let bound = match subset {
                SubsetStrategy::Exact => BoundKind::UpperBound,
                SubsetStrategy::LocalSearch => BoundKind::LowerBound,
            };
            (o, bound, format!("order_search+{subset}"))
        }
    };
    let order = VertexOrder::new(order)?;
    let mut report = omega_max_subset(g, &order, variant, subset, limits)?;
    report.bound = bound;
    report.method = method;
    Ok(report)
}

/// Twin classes of a graph for pruning symmetric orders.
fn graph_twins(g: &Graph) -> Vec<Option<usize>> {
    twin_predecessors(g.n(), |a, b| g.has_edge(a, b) as u64, |_, _| true)
}

/// Exact minimizing order (branch and bound seeded by the degree order).
pub(crate) fn exact_min_order(g: &Graph, variant: Variant) -> Vec<usize> {
    let n = g.n();
    let rows: Vec<u64> = g.row_masks();
    let prev = graph_twins(g);
    let start = degree_order(g).into_vec();
    let init = subset_value(g, &start, variant, SubsetStrategy::Exact);
    let (_, order) = if variant == Variant::Omega3 {
        orders::min_over_orders_omega3(&rows, &prev, (init, start))
    } else {
        let table = orders::CostTable::from_rows(&rows, variant);
        orders::min_over_orders(&table, &prev, (init, start))
    };
    debug_assert_eq!(order.len(), n);
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_threshold;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn kmm(m: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..m {
            for b in m..2 * m {
                e.push((a, b));
            }
        }
        Graph::from_edges(2 * m, &e).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied()).unwrap()
    }

    fn small_graph(n: usize, bits: u64) -> Graph {
        let mut e = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if (bits >> k) & 1 == 1 {
                    e.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn at_examples() {
        let k2 = Graph::complete(2);
        let id2 = VertexOrder::identity(2);
        assert_eq!(omega1_at(&k2, &id2, &set(2, &[1])), r(1, 8));
        let k3 = Graph::complete(3);
        let id3 = VertexOrder::identity(3);
        assert_eq!(omega1_at(&k3, &id3, &set(3, &[2])), r(2, 27));
        assert_eq!(omega2_at(&k3, &id3, &set(3, &[2])), r(2, 27));
        assert_eq!(omega0_at(&k3, &id3, &set(3, &[2])), r(0, 1));
        let e4 = Graph::empty(4);
        for m in 0..16 {
            let a = VertexSet::from_mask(4, m);
            let o = VertexOrder::identity(4);
            assert_eq!(omega0_at(&e4, &o, &a), r(0, 1));
            assert_eq!(omega3_at(&e4, &o, &a), 0.0);
        }
        let k22 = kmm(2);
        let side = set(4, &[0, 1]);
        for perm in [[0, 1, 2, 3], [2, 0, 3, 1], [3, 2, 1, 0]] {
            let o = VertexOrder::new(perm.to_vec()).unwrap();
            assert_eq!(omega2_at(&k22, &o, &side), r(1, 8));
        }
        let o = VertexOrder::new(vec![3, 1, 2, 0]).unwrap();
        let full = VertexSet::full(4);
        assert_eq!(omega2_at(&k22, &o, &full), omega1_at(&k22, &o, &full));
    }

    #[test]
    fn threshold_graphs_at_nested_order() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 0), (2, 1), (4, 0), (4, 1), (4, 2), (4, 3)])
            .unwrap();
        let o = is_threshold(&g).unwrap().nested_order();
        for m in 0..32 {
            let a = VertexSet::from_mask(5, m);
            assert_eq!(omega0_at(&g, &o, &a), r(0, 1));
            // gaps are at most 1 here, so ε ≤ 1/n
            assert!(omega3_at_exact(&g, &o, &a) <= r(1, 5));
        }
        // K₂ already has a gap of 1 when A is the later vertex
        let k2 = Graph::complete(2);
        let a = VertexSet::from_vertices(2, [1]).unwrap();
        assert_eq!(omega3_at_exact(&k2, &VertexOrder::identity(2), &a), r(1, 4));
    }

    #[test]
    fn max_subset_examples() {
        let lim = Limits::default();
        let k22 = kmm(2);
        let blocks = VertexOrder::identity(4);
        let rep = omega_max_subset(&k22, &blocks, Variant::Omega1, SubsetStrategy::Exact, &lim)
            .unwrap();
        assert_eq!(rep.rational(), Some(r(1, 8)));
        assert_eq!(rep.bound, BoundKind::Exact);
        let a = VertexSet::from_vertices(4, rep.subset.clone().unwrap()).unwrap();
        assert_eq!(omega1_at(&k22, &blocks, &a), r(1, 8));
        for v in [Variant::Omega0, Variant::Omega1, Variant::Omega2, Variant::Omega3] {
            let e = Graph::empty(5);
            let rep = omega_max_subset(&e, &VertexOrder::identity(5), v, SubsetStrategy::Exact, &lim)
                .unwrap();
            assert_eq!(rep.rational(), Some(r(0, 1)));
        }
    }

    #[test]
    fn min_order_kmm_values() {
        let lim = Limits::default();
        let ex = |g: &Graph, v| {
            omega_min_order(g, v, OrderStrategy::Exact, SubsetStrategy::Exact, &lim)
                .unwrap()
                .rational()
                .unwrap()
        };
        assert_eq!(ex(&kmm(1), Variant::Omega1), r(1, 8));
        assert_eq!(ex(&kmm(2), Variant::Omega1), r(1, 16));
        assert_eq!(ex(&kmm(3), Variant::Omega1), r(5, 72));
        assert_eq!(ex(&kmm(2), Variant::Omega2), r(1, 8));
        assert_eq!(ex(&kmm(3), Variant::Omega2), r(1, 8));
    }

    #[test]
    fn size_limits_are_enforced() {
        let lim = Limits::default();
        let g = Graph::empty(10);
        let err = omega_min_order(&g, Variant::Omega1, OrderStrategy::Exact, SubsetStrategy::Exact, &lim);
        assert!(matches!(err, Err(Error::SizeLimit { .. })));
        let g = Graph::complete(23);
        let o = VertexOrder::identity(23);
        let err = omega_max_subset(&g, &o, Variant::Omega1, SubsetStrategy::Exact, &lim);
        assert!(matches!(err, Err(Error::SizeLimit { .. })));
        assert!(omega_max_subset(&g, &o, Variant::Omega1, SubsetStrategy::LocalSearch, &lim).is_ok());
    }

    #[test]
    fn fenwick_pair_sum_matches_double_loop() {
        let y: Vec<i64> = (0..200).map(|i| (i * 7919 % 101) as i64).collect();
        let mut direct = 0;
        for p in 0..y.len() {
            for q in p + 1..y.len() {
                direct += (y[p] - y[q]).max(0);
            }
        }
        assert_eq!(pair_sum(&y), direct);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_scan_witness_reproduces_value(n in 2usize..9, bits in any::<u64>(), v in 0u8..4) {
            let g = small_graph(n, bits);
            let variant = Variant::from_index(v).unwrap();
            let o = VertexOrder::identity(n);
            let rep = omega_max_subset(&g, &o, variant, SubsetStrategy::Exact, &Limits::default()).unwrap();
            let a = VertexSet::from_vertices(n, rep.subset.clone().unwrap()).unwrap();
            prop_assert_eq!(rep.rational().unwrap(), omega_at(&g, &o, &a, variant));
        }

        #[test]
        fn local_search_never_exceeds_exact(n in 2usize..10, bits in any::<u64>(), v in 0u8..4) {
            let g = small_graph(n, bits);
            let variant = Variant::from_index(v).unwrap();
            let o = degree_order(&g);
            let lim = Limits::default();
            let ex = omega_max_subset(&g, &o, variant, SubsetStrategy::Exact, &lim).unwrap();
            let ls = omega_max_subset(&g, &o, variant, SubsetStrategy::LocalSearch, &lim).unwrap();
            prop_assert!(ls.rational().unwrap() <= ex.rational().unwrap());
        }

        #[test]
        fn omega0_close_to_omega1_at_each_subset(n in 2usize..9, bits in any::<u64>(), m in any::<u64>()) {
            let g = small_graph(n, bits);
            let o = VertexOrder::identity(n);
            let a = VertexSet::from_mask(n, m);
            let d = omega0_at(&g, &o, &a) - omega1_at(&g, &o, &a);
            prop_assert!(d.abs() < Rational::new(1, n as i64));
        }

        #[test]
        fn omega0_complement_reverse_symmetry(n in 2usize..9, bits in any::<u64>(), m in any::<u64>(), rot in 0usize..8) {
            let g = small_graph(n, bits);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.rotate_left(rot % n);
            let o = VertexOrder::new(perm).unwrap();
            let a = VertexSet::from_mask(n, m);
            prop_assert_eq!(omega0_at(&g, &o, &a), omega0_at(&g.complement(), &o.reversed(), &a));
        }
    }
}
