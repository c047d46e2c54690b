//! Step kernels: symmetric functions on a finite partition of [0,1] into
//! intervals (parts) with given weights, taken in index order.

pub mod functionals;
pub mod generators;

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrder};

pub(crate) const TOL: f64 = 1e-12;

/// Symmetric step function; values are row-major `k × k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    k: usize,
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    fn build(weights: Vec<f64>, values: Vec<f64>, lo: f64, hi: f64) -> Result<Self> {
        let k = weights.len();
        if k == 0 {
            return Err(Error::InvalidKernel("no parts".into()));
        }
        if values.len() != k * k {
            return Err(Error::InvalidKernel(format!(
                "{} values for {k} parts",
                values.len()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidKernel("weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > TOL * (k as f64).max(1.0) {
            return Err(Error::InvalidKernel(format!("weights sum to {total}")));
        }
        let mut values = values;
        for v in values.iter_mut() {
            if !v.is_finite() {
                return Err(Error::InvalidKernel("non-finite value".into()));
            }
            if *v < lo {
                if *v < lo - TOL {
                    return Err(Error::InvalidKernel(format!("value {v} below {lo}")));
                }
                *v = lo;
            } else if *v > hi {
                if *v > hi + TOL {
                    return Err(Error::InvalidKernel(format!("value {v} above {hi}")));
                }
                *v = hi;
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (values[i * k + j], values[j * k + i]);
                if (a - b).abs() > TOL {
                    return Err(Error::InvalidKernel(format!(
                        "asymmetric at ({i},{j}): {a} vs {b}"
                    )));
                }
            }
        }
        Ok(StepFunction { k, weights, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.k..(i + 1) * self.k]
    }

    pub fn has_equal_weights(&self) -> bool {
        let w0 = self.weights[0];
        self.weights.iter().all(|&w| w == w0)
    }

    /// True when every value is exactly 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// `Σ_z w_z W(i,z)` for every part `i`.
    pub fn marginal(&self) -> Vec<f64> {
        (0..self.k)
            .map(|i| self.row(i).iter().zip(&self.weights).map(|(v, w)| v * w).sum())
            .collect()
    }

    /// Parts reordered so that new part `p` is old part `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> StepFunction {
        let k = self.k;
        assert_eq!(perm.len(), k);
        let mut values = vec![0.0; k * k];
        for p in 0..k {
            for q in 0..k {
                values[p * k + q] = self.at(perm[p], perm[q]);
            }
        }
        StepFunction {
            k,
            weights: perm.iter().map(|&i| self.weights[i]).collect(),
            values,
        }
    }

    /// Splits every part into `r` equal parts.
    pub fn refined(&self, r: usize) -> StepFunction {
        assert!(r >= 1);
        let k = self.k * r;
        let mut values = vec![0.0; k * k];
        for p in 0..k {
            for q in 0..k {
                values[p * k + q] = self.at(p / r, q / r);
            }
        }
        StepFunction {
            k,
            weights: (0..k).map(|p| self.weights[p / r] / r as f64).collect(),
            values,
        }
    }

    /// Averages over groups: `grouping[i]` is the group of part `i`.
    pub fn coarsened(&self, grouping: &[usize]) -> Result<StepFunction> {
        if grouping.len() != self.k {
            return Err(Error::InvalidArgument(format!(
                "grouping has {} entries for {} parts",
                grouping.len(),
                self.k
            )));
        }
        let groups = grouping.iter().copied().max().map_or(0, |m| m + 1);
        let mut gw = vec![0.0; groups];
        for (i, &g) in grouping.iter().enumerate() {
            gw[g] += self.weights[i];
        }
        if let Some(empty) = gw.iter().position(|&w| w == 0.0) {
            return Err(Error::EmptyGroup(empty));
        }
        let mut mass = vec![0.0; groups * groups];
        for i in 0..self.k {
            for j in 0..self.k {
                mass[grouping[i] * groups + grouping[j]] +=
                    self.weights[i] * self.weights[j] * self.at(i, j);
            }
        }
        for a in 0..groups {
            for b in 0..groups {
                mass[a * groups + b] /= gw[a] * gw[b];
            }
        }
        // exact symmetry despite summation order
        for a in 0..groups {
            for b in a + 1..groups {
                mass[b * groups + a] = mass[a * groups + b];
            }
        }
        Ok(StepFunction {
            k: groups,
            weights: gw,
            values: mass,
        })
    }

    /// `Σ w_i w_j |D_ij|`.
    pub fn l1_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.k {
            for j in 0..self.k {
                s += self.weights[i] * self.weights[j] * self.at(i, j).abs();
            }
        }
        s
    }

    /// True iff values are nondecreasing along rows (and hence columns).
    pub fn is_monotone(&self) -> bool {
        (0..self.k).all(|i| self.row(i).windows(2).all(|w| w[0] <= w[1] + TOL))
    }
}

/// A kernel: symmetric step function with values in `[0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepKernel(StepFunction);

/// A symmetric step function with values in `[−1,1]`, e.g. a difference of
/// two kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedStepFunction(StepFunction);

impl Deref for StepKernel {
    type Target = StepFunction;
    fn deref(&self) -> &StepFunction {
        &self.0
    }
}

impl Deref for SignedStepFunction {
    type Target = StepFunction;
    fn deref(&self) -> &StepFunction {
        &self.0
    }
}

fn equal_weights(k: usize) -> Vec<f64> {
    vec![1.0 / k as f64; k]
}

impl StepKernel {
    /// Validates symmetry (1e−12), weights (positive, sum 1) and range
    /// (`[0,1]`, clamping values within 1e−12 outside).
    pub fn new(weights: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        StepFunction::build(weights, values, 0.0, 1.0).map(StepKernel)
    }

    pub fn with_equal_weights(k: usize, values: Vec<f64>) -> Result<Self> {
        Self::new(equal_weights(k), values)
    }

    pub fn from_fn(k: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let values = (0..k * k).map(|t| f(t / k, t % k)).collect();
        Self::with_equal_weights(k, values)
    }

    pub fn as_step(&self) -> &StepFunction {
        &self.0
    }

    pub fn into_signed(self) -> SignedStepFunction {
        SignedStepFunction(self.0)
    }

    pub fn permuted(&self, perm: &[usize]) -> StepKernel {
        StepKernel(self.0.permuted(perm))
    }

    pub fn refine(&self, r: usize) -> StepKernel {
        StepKernel(self.0.refined(r))
    }
}

impl SignedStepFunction {
    pub fn new(weights: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        StepFunction::build(weights, values, -1.0, 1.0).map(SignedStepFunction)
    }

    pub fn with_equal_weights(k: usize, values: Vec<f64>) -> Result<Self> {
        Self::new(equal_weights(k), values)
    }

    pub fn as_step(&self) -> &StepFunction {
        &self.0
    }

    pub fn permuted(&self, perm: &[usize]) -> SignedStepFunction {
        SignedStepFunction(self.0.permuted(perm))
    }
}

/// `W_G` with parts in the order given.
pub fn kernel_from_graph(g: &Graph, order: &VertexOrder) -> StepKernel {
    let perm = order.as_slice();
    StepKernel::from_fn(g.n().max(1), |p, q| {
        if g.n() == 0 {
            0.0
        } else {
            g.has_edge(perm[p], perm[q]) as u8 as f64
        }
    })
    .expect("adjacency kernel is valid")
}

pub fn coarsen(w: &StepKernel, grouping: &[usize]) -> Result<StepKernel> {
    w.coarsened(grouping).map(StepKernel)
}

pub fn coarsen_signed(d: &SignedStepFunction, grouping: &[usize]) -> Result<SignedStepFunction> {
    d.coarsened(grouping).map(SignedStepFunction)
}

pub fn marginal(w: &StepFunction) -> Vec<f64> {
    w.marginal()
}

pub fn is_monotone(w: &StepFunction) -> bool {
    w.is_monotone()
}

/// Permutation sorting parts by nondecreasing marginal, ties by index.
pub fn marginal_order(w: &StepFunction) -> Vec<usize> {
    let m = w.marginal();
    let mut perm: Vec<usize> = (0..w.k()).collect();
    perm.sort_by(|&a, &b| m[a].total_cmp(&m[b]).then(a.cmp(&b)));
    perm
}

pub fn sort_by_marginal(w: &StepKernel) -> (StepKernel, Vec<usize>) {
    let perm = marginal_order(w);
    (w.permuted(&perm), perm)
}

/// Coarse bracketing kernels for a monotone kernel on an equal grid whose
/// part count is a multiple of `n`. Returns `(lower, average, upper)` on `n`
/// equal parts: `average` is the block average, and `lower`/`upper` shift it
/// one block down/up along the diagonal, with 0 below the first block and 1
/// past the last.
pub fn sandwich(w: &StepKernel, n: usize) -> Result<(StepKernel, StepKernel, StepKernel)> {
    if n == 0 || w.k() % n != 0 {
        return Err(Error::IncompatibleGrid(format!(
            "{} parts do not split into {n} blocks",
            w.k()
        )));
    }
    if !w.has_equal_weights() {
        return Err(Error::IncompatibleGrid("sandwich needs equal part weights".into()));
    }
    if !w.is_monotone() {
        return Err(Error::NotMonotone);
    }
    let r = w.k() / n;
    let grouping: Vec<usize> = (0..w.k()).map(|i| i / r).collect();
    let avg = coarsen(w, &grouping)?;
    let shifted = |da: isize| {
        StepKernel::from_fn(n, |a, b| {
            let (a, b) = (a as isize + da, b as isize + da);
            if a < 0 || b < 0 {
                0.0
            } else if a >= n as isize || b >= n as isize {
                1.0
            } else {
                avg.at(a as usize, b as usize)
            }
        })
    };
    let lower = shifted(-1)?;
    let upper = shifted(1)?;
    let avg = StepKernel::with_equal_weights(n, avg.values().to_vec())?;
    Ok((lower, avg, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::generators::{additive_kernel, constant, kmm_kernel, random_monotone};

    fn k22_kernel() -> StepKernel {
        kmm_kernel(2, 1)
    }

    #[test]
    fn from_graph_examples() {
        let k2 = kernel_from_graph(&Graph::complete(2), &VertexOrder::identity(2));
        assert_eq!(k2.values(), &[0.0, 1.0, 1.0, 0.0]);
        let e = kernel_from_graph(&Graph::empty(3), &VertexOrder::identity(3));
        assert!(e.values().iter().all(|&v| v == 0.0));
        let k = k22_kernel();
        assert_eq!(k.row(0), &[0.0, 0.0, 1.0, 1.0]);
        assert_eq!(k.row(3), &[1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn validation() {
        assert!(StepKernel::with_equal_weights(2, vec![0.0, 0.5, 0.501, 0.0]).is_err());
        assert!(StepKernel::with_equal_weights(1, vec![1.5]).is_err());
        let k = StepKernel::with_equal_weights(1, vec![1.0 + 1e-13]).unwrap();
        assert_eq!(k.at(0, 0), 1.0);
        assert!(StepKernel::new(vec![0.5, 0.6], vec![0.0; 4]).is_err());
        assert!(SignedStepFunction::with_equal_weights(1, vec![-1.0]).is_ok());
    }

    #[test]
    fn coarsen_examples() {
        let k = k22_kernel();
        assert_eq!(coarsen(&k, &[0, 1, 2, 3]).unwrap(), k);
        let one = coarsen(&k, &[0, 0, 0, 0]).unwrap();
        assert_eq!(one.values(), &[0.5]);
        let sides = coarsen(&k, &[0, 0, 1, 1]).unwrap();
        assert_eq!(sides.values(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(sides.weights(), &[0.5, 0.5]);
        assert!(matches!(coarsen(&k, &[0, 0, 2, 2]), Err(Error::EmptyGroup(1))));
    }

    #[test]
    fn marginal_examples() {
        assert!(marginal(&constant(0.3, 4)).iter().all(|&m| (m - 0.3).abs() < 1e-15));
        assert_eq!(marginal(&k22_kernel()), vec![0.5; 4]);
        let m = marginal(&additive_kernel(4));
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn monotonicity_examples() {
        assert!(is_monotone(&constant(0.7, 5)));
        assert!(!is_monotone(&k22_kernel()));
        assert!(is_monotone(&additive_kernel(6)));
        assert!(is_monotone(&random_monotone(8, 11)));
    }

    #[test]
    fn marginal_sort_examples() {
        let a = additive_kernel(5);
        assert_eq!(sort_by_marginal(&a).1, vec![0, 1, 2, 3, 4]);
        let rev = a.permuted(&[4, 3, 2, 1, 0]);
        assert_eq!(sort_by_marginal(&rev).1, vec![4, 3, 2, 1, 0]);
        assert_eq!(sort_by_marginal(&k22_kernel()).1, vec![0, 1, 2, 3]);
    }

    fn check_sandwich(w: &StepKernel, n: usize) {
        let (lo, mid, hi) = sandwich(w, n).unwrap();
        let r = w.k() / n;
        let (flo, fmid, fhi) = (lo.refine(r), mid.refine(r), hi.refine(r));
        for i in 0..w.k() {
            for j in 0..w.k() {
                assert!(flo.at(i, j) <= w.at(i, j) + 1e-12);
                assert!(w.at(i, j) <= fhi.at(i, j) + 1e-12);
                assert!(flo.at(i, j) <= fmid.at(i, j) + 1e-12);
                assert!(fmid.at(i, j) <= fhi.at(i, j) + 1e-12);
            }
        }
        let gap: f64 = (0..n * n).map(|t| hi.values()[t] - lo.values()[t]).sum::<f64>()
            / (n * n) as f64;
        assert!(gap <= 4.0 / n as f64 + 1e-12, "gap {gap} for n = {n}");
    }

    #[test]
    fn sandwich_examples() {
        check_sandwich(&constant(0.4, 8), 4);
        check_sandwich(&additive_kernel(8), 4);
        check_sandwich(&additive_kernel(12), 4);
        check_sandwich(&random_monotone(16, 3), 8);
        assert!(matches!(sandwich(&k22_kernel(), 2), Err(Error::NotMonotone)));
        assert!(matches!(sandwich(&additive_kernel(6), 4), Err(Error::IncompatibleGrid(_))));
    }

    #[test]
    fn refine_matches_kmm() {
        assert_eq!(kmm_kernel(1, 2), kmm_kernel(2, 1));
        assert_eq!(kmm_kernel(1, 4), kmm_kernel(4, 1));
    }
}
