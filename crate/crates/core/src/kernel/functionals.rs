//! Kernel-side functionals on atomic step kernels. Orders are permutations
//! of the parts; subsets are unions of whole parts.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{marginal_order, StepFunction, StepKernel};
use crate::error::{Error, Result};
use crate::functionals::orders::{min_over_orders, scenario_count, CostTable};
use crate::functionals::{descend_orders, scan, SubsetStrategy, Variant};
use crate::graph::{twin_predecessors, VertexOrder};
use crate::limits::Limits;
use crate::report::{BoundKind, FunctionalReport, Rational, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelOrderStrategy {
    Exact,
    Marginal,
    /// Split every part into `r` equal parts, then search orders exactly.
    Refine(usize),
    /// Adjacent-transposition descent from the marginal order.
    OrderSearch,
}

impl fmt::Display for KernelOrderStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelOrderStrategy::Exact => f.write_str("atomic"),
            KernelOrderStrategy::Marginal => f.write_str("marginal"),
            KernelOrderStrategy::Refine(r) => write!(f, "refined({r})"),
            KernelOrderStrategy::OrderSearch => f.write_str("order_search"),
        }
    }
}

/// `exact` (or `atomic`), `marginal`, `order_search`, `refine:R`.
impl FromStr for KernelOrderStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "atomic" => Ok(KernelOrderStrategy::Exact),
            "marginal" => Ok(KernelOrderStrategy::Marginal),
            "order_search" | "order-search" => Ok(KernelOrderStrategy::OrderSearch),
            _ => s
                .strip_prefix("refine:")
                .and_then(|r| r.parse().ok())
                .map(KernelOrderStrategy::Refine)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown kernel order strategy `{s}`"))),
        }
    }
}

fn check_variant(variant: Variant) -> Result<()> {
    match variant {
        Variant::Omega1 | Variant::Omega2 => Ok(()),
        _ => Err(Error::InvalidArgument(
            "kernel functionals are defined for variants 1 and 2".into(),
        )),
    }
}

/// 0/1-valued kernels on equal parts reduce to integer rows problems with
/// denominator `k³`.
fn integer_rows(w: &StepFunction) -> Option<Vec<u64>> {
    if w.k() > 64 || !w.is_zero_one() || !w.has_equal_weights() {
        return None;
    }
    let k = w.k();
    Some(
        (0..k)
            .map(|i| (0..k).filter(|&j| w.at(i, j) == 1.0).fold(0u64, |m, j| m | 1 << j))
            .collect(),
    )
}

/// Objective at a subset of parts, given `y_i = Σ_{z∈B} w_z W(i,z)`.
fn objective(w: &StepFunction, marg: &[f64], y: &[f64], variant: Variant) -> f64 {
    let k = w.k();
    let wt = w.weights();
    let mut s = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            let mut t = (y[i] - y[j]).max(0.0);
            if variant == Variant::Omega2 {
                t += ((marg[i] - y[i]) - (marg[j] - y[j])).max(0.0);
            }
            s += wt[i] * wt[j] * t;
        }
    }
    s
}

fn y_for_mask(w: &StepFunction, mask: u64) -> Vec<f64> {
    let k = w.k();
    let wt = w.weights();
    (0..k)
        .map(|i| (0..k).filter(|&z| (mask >> z) & 1 == 1).map(|z| wt[z] * w.at(i, z)).sum())
        .collect()
}

/// Subset sums `Σ_{z∈m} w_{off+z} W(i, off+z)` for all masks over `bits`
/// parts starting at `off`; layout `[m * k + i]`.
fn half_table(w: &StepFunction, off: usize, bits: usize) -> Vec<f64> {
    let k = w.k();
    let wt = w.weights();
    let mut t = vec![0.0; (1 << bits) * k];
    for m in 1usize..(1 << bits) {
        let z = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        for i in 0..k {
            t[m * k + i] = t[rest * k + i] + wt[off + z] * w.at(i, off + z);
        }
    }
    t
}

/// Exact maximum over part subsets of a kernel in index order.
fn float_exact_max(w: &StepFunction, variant: Variant) -> (f64, u64) {
    let k = w.k();
    let marg = w.marginal();
    let lo = k / 2;
    let hi = k - lo;
    let lt = half_table(w, 0, lo);
    let ht = half_table(w, lo, hi);
    // Ω₂ is invariant under complementing B; keep the top part out.
    let hi_count: u64 = if variant == Variant::Omega2 { 1 << (hi - 1) } else { 1 << hi };
    let better = |a: (f64, u64), b: (f64, u64)| {
        if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
            a
        } else {
            b
        }
    };
    (0..hi_count)
        .into_par_iter()
        .map(|h| {
            let mut y = vec![0.0; k];
            let mut best = (f64::NEG_INFINITY, u64::MAX);
            for l in 0u64..(1 << lo) {
                for i in 0..k {
                    y[i] = lt[l as usize * k + i] + ht[h as usize * k + i];
                }
                let v = objective(w, &marg, &y, variant);
                best = better((v, l | (h << lo)), best);
            }
            best
        })
        .reduce(|| (f64::NEG_INFINITY, u64::MAX), better)
}

fn float_local_search(w: &StepFunction, variant: Variant) -> (f64, u64) {
    let k = w.k();
    let marg = w.marginal();
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let by_marg = marginal_order(w);
    let mut starts = vec![0u64, full];
    for i in 0..k {
        let row_mask = (0..k).filter(|&z| w.at(i, z) >= marg[i]).fold(0u64, |m, z| m | 1 << z);
        starts.push(row_mask);
    }
    for t in 1..k {
        starts.push(by_marg[..t].iter().fold(0u64, |m, &z| m | 1 << z));
    }
    let mut best = (f64::NEG_INFINITY, 0u64);
    for mut mask in starts {
        let mut cur = objective(w, &marg, &y_for_mask(w, mask), variant);
        loop {
            let mut improved = false;
            for z in 0..k {
                let cand = mask ^ (1 << z);
                let v = objective(w, &marg, &y_for_mask(w, cand), variant);
                if v > cur {
                    cur = v;
                    mask = cand;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        if cur > best.0 {
            best = (cur, mask);
        }
    }
    best
}

fn mask_to_parts(mask: u64, perm: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = (0..perm.len())
        .filter(|&p| (mask >> p) & 1 == 1)
        .map(|p| perm[p])
        .collect();
    out.sort_unstable();
    out
}

/// Subset maximum for a kernel already arranged in its order.
fn max_in_order(
    w: &StepFunction,
    variant: Variant,
    strategy: SubsetStrategy,
) -> (Value, u64, BoundKind) {
    let k = w.k();
    match strategy {
        SubsetStrategy::Exact => {
            if let Some(rows) = integer_rows(w) {
                let (num, mask) = scan::exact_max(&rows, variant);
                let den = (k as i64).pow(3);
                (Value::Rational(Rational::new(num, den)), mask, BoundKind::Exact)
            } else {
                let (v, mask) = float_exact_max(w, variant);
                (Value::Float(v), mask, BoundKind::Exact)
            }
        }
        SubsetStrategy::LocalSearch => {
            let (v, mask) = float_local_search(w, variant);
            (Value::Float(v), mask, BoundKind::LowerBound)
        }
    }
}

/// `max_B Σ_{i≺j} w_i w_j (Σ_{z∈B} w_z (W(i,z) − W(j,z)))₊` (variant 1) or
/// its symmetrization with the complement of `B` (variant 2).
pub fn kernel_omega_at(
    w: &StepKernel,
    order: &VertexOrder,
    variant: Variant,
    strategy: SubsetStrategy,
    limits: &Limits,
) -> Result<FunctionalReport> {
    check_variant(variant)?;
    if order.len() != w.k() {
        return Err(Error::InvalidOrder(format!(
            "order has {} entries for {} parts",
            order.len(),
            w.k()
        )));
    }
    if strategy == SubsetStrategy::Exact {
        limits.check_subset("kernel subset scan", w.k())?;
    }
    let arranged = w.permuted(order.as_slice());
    let (value, mask, bound) = max_in_order(&arranged, variant, strategy);
    Ok(FunctionalReport {
        value,
        bound,
        order: Some(order.clone()),
        subset: Some(mask_to_parts(mask, order.as_slice())),
        method: format!("atomic+{strategy}"),
    })
}

fn kernel_twins(w: &StepFunction) -> Vec<Option<usize>> {
    twin_predecessors(
        w.k(),
        |a, b| w.at(a, b).to_bits(),
        |a, b| w.weights()[a] == w.weights()[b],
    )
}

/// Exact minimizing part order of `min_≺ max_B`.
fn exact_order(w: &StepFunction, variant: Variant) -> Vec<usize> {
    let k = w.k();
    let start = marginal_order(w);
    let prev = kernel_twins(w);
    if let Some(rows) = integer_rows(w) {
        let table = CostTable::from_rows(&rows, variant);
        let init = table.evaluate(&start);
        min_over_orders(&table, &prev, (init, start)).1
    } else {
        let sc = scenario_count(k, variant);
        let marg = w.marginal();
        let ys: Vec<Vec<f64>> = (0..sc).map(|s| y_for_mask(w, s as u64)).collect();
        let wt = w.weights();
        let table = CostTable::from_fn(k, sc, |u, v, s| {
            let y = &ys[s];
            let mut t = (y[u] - y[v]).max(0.0);
            if variant == Variant::Omega2 {
                t += ((marg[u] - y[u]) - (marg[v] - y[v])).max(0.0);
            }
            wt[u] * wt[v] * t
        });
        let init = table.evaluate(&start);
        min_over_orders(&table, &prev, (init, start)).1
    }
}

/// `min_≺ max_B` over part orders.
///
/// `Exact` searches all part permutations (label `atomic`). `Marginal`
/// evaluates the marginal order, exact for variant 2. `Refine(r)` runs the
/// exact search after splitting parts, an upper bound for orders that may
/// split atoms. `OrderSearch` descends from the marginal order.
pub fn kernel_omega_min(
    w: &StepKernel,
    variant: Variant,
    strategy: KernelOrderStrategy,
    limits: &Limits,
) -> Result<FunctionalReport> {
    check_variant(variant)?;
    let (target, bound): (StepKernel, BoundKind) = match strategy {
        KernelOrderStrategy::Refine(r) => {
            if r == 0 {
                return Err(Error::InvalidArgument("refinement factor must be ≥ 1".into()));
            }
            (w.refine(r), BoundKind::UpperBound)
        }
        KernelOrderStrategy::Exact => (w.clone(), BoundKind::Exact),
        KernelOrderStrategy::Marginal => (
            w.clone(),
            if variant == Variant::Omega2 {
                BoundKind::Exact
            } else {
                BoundKind::UpperBound
            },
        ),
        KernelOrderStrategy::OrderSearch => (w.clone(), BoundKind::UpperBound),
    };
    let k = target.k();
    limits.check_subset("kernel subset scan", k)?;
    let order = match strategy {
        KernelOrderStrategy::Exact | KernelOrderStrategy::Refine(_) => {
            limits.check_order("kernel order scan", k)?;
            exact_order(&target, variant)
        }
        KernelOrderStrategy::Marginal => marginal_order(&target),
        KernelOrderStrategy::OrderSearch => {
            descend_orders(marginal_order(&target), |p| {
                max_in_order(&target.permuted(p), variant, SubsetStrategy::Exact).0.to_f64()
            })
            .1
        }
    };
    let order = VertexOrder::new(order)?;
    let mut report = kernel_omega_at(&target, &order, variant, SubsetStrategy::Exact, limits)?;
    report.bound = bound;
    report.method = strategy.to_string();
    Ok(report)
}

/// `Σ_{i≺j} w_i w_j Σ_z w_z (W(i,z) − W(j,z))₊`.
pub fn kernel_omega_tilde(w: &StepFunction, order: &VertexOrder) -> f64 {
    let a = w.permuted(order.as_slice());
    let (k, wt) = (a.k(), a.weights());
    let mut s = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            let inner: f64 = (0..k).map(|z| wt[z] * (a.at(i, z) - a.at(j, z)).max(0.0)).sum();
            s += wt[i] * wt[j] * inner;
        }
    }
    s
}

/// `Σ_{i≺j} w_i w_j Σ_z w_z W(i,z)(1 − W(j,z))` plus half the same integral
/// over each atom with itself.
pub fn kernel_goxx(w: &StepFunction, order: &VertexOrder) -> f64 {
    let a = w.permuted(order.as_slice());
    let (k, wt) = (a.k(), a.weights());
    let mut s = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            let inner: f64 = (0..k).map(|z| wt[z] * a.at(i, z) * (1.0 - a.at(j, z))).sum();
            s += wt[i] * wt[j] * inner;
        }
        let own: f64 = (0..k).map(|z| wt[z] * a.at(i, z) * (1.0 - a.at(i, z))).sum();
        s += 0.5 * wt[i] * wt[i] * own;
    }
    s
}

/// Minimum of [`kernel_goxx`] over part orders, attained by the marginal order.
pub fn kernel_goxx_min(w: &StepKernel) -> FunctionalReport {
    let order = VertexOrder::new(marginal_order(w)).expect("sort yields a permutation");
    FunctionalReport {
        value: Value::Float(kernel_goxx(w, &order)),
        bound: BoundKind::Exact,
        order: Some(order),
        subset: None,
        method: "marginal".into(),
    }
}
