//! L¹ and cut norms of signed step functions, and distances between step
//! kernels minimized over part permutations.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{marginal_order, SignedStepFunction, StepFunction, StepKernel, TOL};
use crate::limits::Limits;
use crate::report::{BoundKind, NormReport, Rational};
use crate::sampling::Seed;

/// Largest common refinement of two partitions that is accepted.
pub const MAX_COMMON_PARTS: usize = 256;
/// Largest part count for the scan over all part permutations.
pub const MAX_PERM_PARTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutMode {
    /// Test functions with values in `[−1,1]`.
    Pm,
    /// Test functions with values in `[0,1]`.
    ZeroOne,
}

impl fmt::Display for CutMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CutMode::Pm => "pm",
            CutMode::ZeroOne => "zeroone",
        })
    }
}

impl FromStr for CutMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm" => Ok(CutMode::Pm),
            "zeroone" | "01" => Ok(CutMode::ZeroOne),
            _ => Err(Error::InvalidArgument(format!("unknown cut mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutStrategy {
    Exact,
    /// Alternating best responses from seeded random starts.
    LocalSearch(Seed),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermStrategy {
    Exact,
    MarginalAlign,
}

impl FromStr for PermStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(PermStrategy::Exact),
            "marginal_align" | "marginal" => Ok(PermStrategy::MarginalAlign),
            _ => Err(Error::InvalidArgument(format!("unknown permutation strategy `{s}`"))),
        }
    }
}

/// Breakpoint merge of two partitions of [0,1]. Returns the common weights
/// and, for every common part, its part in `a` and in `b`.
pub fn common_refinement(a: &[f64], b: &[f64]) -> Result<(Vec<f64>, Vec<usize>, Vec<usize>)> {
    if a == b {
        let id: Vec<usize> = (0..a.len()).collect();
        return Ok((a.to_vec(), id.clone(), id));
    }
    let (mut i, mut j) = (0, 0);
    let (mut ea, mut eb) = (a[0], b[0]);
    let mut last = 0.0;
    let (mut weights, mut ma, mut mb) = (Vec::new(), Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        let end = ea.min(eb);
        weights.push(end - last);
        ma.push(i);
        mb.push(j);
        if weights.len() > MAX_COMMON_PARTS {
            return Err(Error::MismatchedPartitions(format!(
                "common refinement exceeds {MAX_COMMON_PARTS} parts"
            )));
        }
        last = end;
        let close = |x: f64| (x - end).abs() <= 1e-12;
        let (adv_a, adv_b) = (close(ea), close(eb));
        if adv_a {
            i += 1;
            if i < a.len() {
                ea += a[i];
            }
        }
        if adv_b {
            j += 1;
            if j < b.len() {
                eb += b[j];
            }
        }
        if adv_a != adv_b && (i == a.len() || j == b.len()) {
            break;
        }
    }
    // the final part absorbs rounding so the weights sum to 1
    let total: f64 = weights[..weights.len() - 1].iter().sum();
    *weights.last_mut().expect("nonempty") = 1.0 - total;
    if weights.iter().any(|&w| w <= 0.0) {
        return Err(Error::MismatchedPartitions("degenerate common refinement".into()));
    }
    Ok((weights, ma, mb))
}

fn lift(f: &StepFunction, weights: &[f64], map: &[usize]) -> Vec<f64> {
    let k = weights.len();
    (0..k * k).map(|t| f.at(map[t / k], map[t % k])).collect()
}

/// `W1 − W2` on the common refinement of the two partitions.
pub fn difference(w1: &StepKernel, w2: &StepKernel) -> Result<SignedStepFunction> {
    let (weights, m1, m2) = common_refinement(w1.weights(), w2.weights())?;
    let a = lift(w1, &weights, &m1);
    let b = lift(w2, &weights, &m2);
    let values = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    SignedStepFunction::new(weights, values)
}

/// `∬ |W1 − W2|`.
pub fn l1_distance(w1: &StepKernel, w2: &StepKernel) -> Result<f64> {
    Ok(difference(w1, w2)?.l1_norm())
}

/// `|Σ_ij w_i w_j D_ij f_i g_j|`.
pub fn cut_value_at(d: &StepFunction, f: &[i8], g: &[i8]) -> f64 {
    let (k, w) = (d.k(), d.weights());
    let mut s = 0.0;
    for i in 0..k {
        if f[i] == 0 {
            continue;
        }
        let r: f64 = (0..k).map(|j| w[j] * d.at(i, j) * g[j] as f64).sum();
        s += w[i] * f[i] as f64 * r;
    }
    s.abs()
}

fn response(mode: CutMode, w: &[f64], r: &[f64]) -> f64 {
    match mode {
        CutMode::Pm => w.iter().zip(r).map(|(a, b)| a * b.abs()).sum(),
        CutMode::ZeroOne => {
            let (mut pos, mut neg) = (0.0, 0.0);
            for (a, b) in w.iter().zip(r) {
                if *b > 0.0 {
                    pos += a * b;
                } else {
                    neg -= a * b;
                }
            }
            pos.max(neg)
        }
    }
}

/// Optimal `f` for the row sums `r`.
fn best_f(mode: CutMode, w: &[f64], r: &[f64]) -> Vec<i8> {
    match mode {
        CutMode::Pm => r.iter().map(|&x| if x >= 0.0 { 1 } else { -1 }).collect(),
        CutMode::ZeroOne => {
            let pos: f64 = w.iter().zip(r).map(|(a, b)| a * b.max(0.0)).sum();
            let neg: f64 = w.iter().zip(r).map(|(a, b)| -a * b.min(0.0)).sum();
            if pos >= neg {
                r.iter().map(|&x| (x > 0.0) as i8).collect()
            } else {
                r.iter().map(|&x| (x < 0.0) as i8).collect()
            }
        }
    }
}

fn row_sums(d: &StepFunction, g: &[i8]) -> Vec<f64> {
    let (k, w) = (d.k(), d.weights());
    (0..k)
        .map(|i| (0..k).map(|j| w[j] * d.at(i, j) * g[j] as f64).sum())
        .collect()
}

fn mask_to_g(mode: CutMode, k: usize, mask: u64) -> Vec<i8> {
    (0..k)
        .map(|j| {
            let bit = (mask >> j) & 1 == 1;
            match mode {
                CutMode::Pm => {
                    if bit {
                        1
                    } else {
                        -1
                    }
                }
                CutMode::ZeroOne => bit as i8,
            }
        })
        .collect()
}

/// Gray-code walk over the low `low` bits above `base`.
fn scan_chunk(d: &StepFunction, cols: &[f64], mode: CutMode, low: usize, base: u64) -> (f64, u64) {
    let k = d.k();
    let w = d.weights();
    let mut r = row_sums(d, &mask_to_g(mode, k, base));
    let step = match mode {
        CutMode::Pm => 2.0,
        CutMode::ZeroOne => 1.0,
    };
    let mut mask = base;
    let mut best = (response(mode, w, &r), mask);
    for t in 1u64..(1u64 << low) {
        let j = t.trailing_zeros() as usize;
        mask ^= 1 << j;
        let sign = if (mask >> j) & 1 == 1 { step } else { -step };
        let col = &cols[j * k..(j + 1) * k];
        for i in 0..k {
            r[i] += sign * col[i];
        }
        let v = response(mode, w, &r);
        if v > best.0 || (v == best.0 && mask < best.1) {
            best = (v, mask);
        }
    }
    best
}

fn exact_cut(d: &StepFunction, mode: CutMode) -> (Vec<i8>, Vec<i8>) {
    let k = d.k();
    let w = d.weights();
    let mut cols = vec![0.0; k * k];
    for j in 0..k {
        for i in 0..k {
            cols[j * k + i] = w[j] * d.at(i, j);
        }
    }
    // g and −g give the same value in pm mode: fix the last part to +1
    let (free, fixed) = match mode {
        CutMode::Pm => (k - 1, 1u64 << (k - 1)),
        CutMode::ZeroOne => (k, 0),
    };
    let high = if free > 12 { 6 } else { 0 };
    let low = free - high;
    let better = |a: (f64, u64), b: (f64, u64)| {
        if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
            a
        } else {
            b
        }
    };
    let (_, mask) = (0u64..(1u64 << high))
        .into_par_iter()
        .map(|h| scan_chunk(d, &cols, mode, low, fixed | (h << low)))
        .reduce(|| (f64::NEG_INFINITY, u64::MAX), better);
    let g = mask_to_g(mode, k, mask);
    let f = best_f(mode, w, &row_sums(d, &g));
    (f, g)
}

fn local_cut(d: &StepFunction, mode: CutMode, seed: Seed) -> (Vec<i8>, Vec<i8>) {
    let k = d.k();
    let w = d.weights();
    let mut rng = seed.rng(0);
    let mut starts: Vec<Vec<i8>> = vec![mask_to_g(mode, k, u64::MAX)];
    for _ in 0..200 {
        starts.push(
            (0..k)
                .map(|_| {
                    let b: bool = rng.random();
                    match mode {
                        CutMode::Pm => 2 * b as i8 - 1,
                        CutMode::ZeroOne => b as i8,
                    }
                })
                .collect(),
        );
    }
    let mut best = (f64::NEG_INFINITY, Vec::new(), Vec::new());
    for mut g in starts {
        let mut f = best_f(mode, w, &row_sums(d, &g));
        let mut cur = cut_value_at(d, &f, &g);
        loop {
            // D is symmetric, so the response to f uses the same row sums
            let g2 = best_f(mode, w, &row_sums(d, &f));
            let f2 = best_f(mode, w, &row_sums(d, &g2));
            let v = cut_value_at(d, &f2, &g2);
            if v > cur + 1e-15 {
                cur = v;
                f = f2;
                g = g2;
            } else {
                break;
            }
        }
        if cur > best.0 {
            best = (cur, f, g);
        }
    }
    (best.1, best.2)
}

/// `sup_{f,g} |∬ D f g|` over test functions in `[−1,1]` (pm) or `[0,1]`.
pub fn cut_norm(
    d: &SignedStepFunction,
    mode: CutMode,
    strategy: CutStrategy,
    limits: &Limits,
) -> Result<NormReport> {
    let (f, g, bound, method) = match strategy {
        CutStrategy::Exact => {
            limits.check_cutnorm("exact cut norm", d.k())?;
            let (f, g) = exact_cut(d, mode);
            (f, g, BoundKind::Exact, format!("exact-{mode}"))
        }
        CutStrategy::LocalSearch(seed) => {
            let (f, g) = local_cut(d, mode, seed);
            (f, g, BoundKind::LowerBound, format!("local_search-{mode}"))
        }
    };
    Ok(NormReport {
        value: cut_value_at(d, &f, &g),
        bound,
        witness_f: Some(f),
        witness_g: Some(g),
        witness_perm: None,
        method,
    })
}

/// Exact pm cut norm of an integer-valued function on `k` equal parts, as a
/// rational over `k²`. `None` unless every value is an integer.
pub fn cut_norm_rational(d: &SignedStepFunction, limits: &Limits) -> Result<Option<Rational>> {
    let k = d.k();
    if !d.has_equal_weights() || d.values().iter().any(|v| v.fract() != 0.0) {
        return Ok(None);
    }
    limits.check_cutnorm("exact cut norm", k)?;
    let m: Vec<i64> = d.values().iter().map(|&v| v as i64).collect();
    let mut best = 0i64;
    for mask in 0u64..(1u64 << (k - 1)) {
        let g = mask | 1 << (k - 1);
        let s: i64 = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if (g >> j) & 1 == 1 { m[i * k + j] } else { -m[i * k + j] })
                    .sum::<i64>()
                    .abs()
            })
            .sum();
        best = best.max(s);
    }
    Ok(Some(Rational::new(best, (k * k) as i64)))
}

fn check_matching(w1: &StepKernel, w2: &StepKernel) -> Result<()> {
    if w1.k() != w2.k() {
        return Err(Error::MismatchedPartitions(format!(
            "{} parts vs {} parts",
            w1.k(),
            w2.k()
        )));
    }
    let mut a = w1.weights().to_vec();
    let mut b = w2.weights().to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    if a.iter().zip(&b).any(|(x, y)| (x - y).abs() > TOL) {
        return Err(Error::MismatchedPartitions("part weights differ".into()));
    }
    Ok(())
}

/// All permutations `π` of `0..k` with `b[π(i)] ≈ a[i]`.
fn weight_preserving_perms(a: &[f64], b: &[f64]) -> Vec<Vec<usize>> {
    fn rec(a: &[f64], b: &[f64], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == a.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..b.len() {
            if !used[j] && (a[i] - b[j]).abs() <= TOL {
                used[j] = true;
                cur.push(j);
                rec(a, b, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(a, b, &mut vec![false; b.len()], &mut Vec::new(), &mut out);
    out
}

/// Pairing of parts by marginal rank.
fn marginal_alignment(w1: &StepKernel, w2: &StepKernel) -> Vec<usize> {
    let o1 = marginal_order(w1);
    let o2 = marginal_order(w2);
    let mut pi = vec![0; w1.k()];
    for (r, &i) in o1.iter().enumerate() {
        pi[i] = o2[r];
    }
    pi
}

fn aligned_difference(w1: &StepKernel, w2: &StepKernel, pi: &[usize]) -> Result<SignedStepFunction> {
    let p = w2.permuted(pi);
    let k = w1.k();
    let values = (0..k * k).map(|t| w1.values()[t] - p.values()[t]).collect();
    SignedStepFunction::new(w1.weights().to_vec(), values)
}

fn perm_distance(
    w1: &StepKernel,
    w2: &StepKernel,
    strategy: PermStrategy,
    eval: impl Fn(&SignedStepFunction) -> Result<(f64, Option<(Vec<i8>, Vec<i8>)>)> + Sync,
    name: &str,
) -> Result<NormReport> {
    check_matching(w1, w2)?;
    let (value, witness, pi, bound) = match strategy {
        PermStrategy::Exact => {
            if w1.k() > MAX_PERM_PARTS {
                return Err(Error::SizeLimit {
                    what: "permutation scan",
                    size: w1.k(),
                    limit: MAX_PERM_PARTS,
                });
            }
            let perms = weight_preserving_perms(w1.weights(), w2.weights());
            let results: Vec<_> = perms
                .par_iter()
                .map(|pi| eval(&aligned_difference(w1, w2, pi)?).map(|(v, wit)| (v, wit, pi.clone())))
                .collect::<Result<_>>()?;
            let (v, wit, pi) = results
                .into_iter()
                .reduce(|a, b| if b.0 < a.0 { b } else { a })
                .expect("identity-like permutation exists");
            (v, wit, pi, BoundKind::UpperBound)
        }
        PermStrategy::MarginalAlign => {
            let pi = marginal_alignment(w1, w2);
            let (v, wit) = eval(&aligned_difference(w1, w2, &pi)?)?;
            (v, wit, pi, BoundKind::UpperBound)
        }
    };
    let tag = match strategy {
        PermStrategy::Exact => "perm_exact",
        PermStrategy::MarginalAlign => "marginal_align",
    };
    let (f, g) = witness.map_or((None, None), |(f, g)| (Some(f), Some(g)));
    Ok(NormReport {
        value,
        bound,
        witness_f: f,
        witness_g: g,
        witness_perm: Some(pi),
        method: format!("{tag}-{name}"),
    })
}

/// `min_π ‖W1 − W2∘π‖` over part permutations that preserve weights. An
/// upper bound on the cut distance, since couplings are not searched.
pub fn perm_cut_distance(
    w1: &StepKernel,
    w2: &StepKernel,
    mode: CutMode,
    strategy: PermStrategy,
    limits: &Limits,
) -> Result<NormReport> {
    perm_distance(
        w1,
        w2,
        strategy,
        |d| {
            let r = cut_norm(d, mode, CutStrategy::Exact, limits)?;
            Ok((r.value, Some((r.witness_f.unwrap(), r.witness_g.unwrap()))))
        },
        &format!("cut-{mode}"),
    )
}

/// L¹ analogue of [`perm_cut_distance`].
pub fn perm_l1_distance(w1: &StepKernel, w2: &StepKernel, strategy: PermStrategy) -> Result<NormReport> {
    perm_distance(w1, w2, strategy, |d| Ok((d.l1_norm(), None)), "l1")
}
