//! Randomized verification suites for the inequalities and identities that
//! relate the functionals and norms. Each suite draws `trials` instances
//! from a seed and records one row per individual check.

use std::collections::HashSet;

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{omega0_at, omega_max_subset, omega_min_order, OrderStrategy, SubsetStrategy, Variant};
use crate::graph::{degree_order, is_nested_order, is_threshold, threshold_from_creation, CreationSequence, Graph, VertexOrder, VertexSet};
use crate::kernel::functionals::{kernel_goxx, kernel_goxx_min, kernel_omega_at, kernel_omega_min, KernelOrderStrategy};
use crate::kernel::generators::random_monotone;
use crate::kernel::{coarsen_signed, kernel_from_graph, sandwich, sort_by_marginal, SignedStepFunction, StepKernel};
use crate::limits::Limits;
use crate::norms::{cut_norm, difference, l1_distance, CutMode, CutStrategy};
use crate::quasithreshold::{omega_tilde0, omega_tilde1, threshold_edit_distance, EditStrategy};
use crate::report::{ratio_to_f64, Rational};
use crate::sampling::{gnp, random_threshold, Seed};

/// Tolerance for float comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

pub const SUITES: &[(&str, &str)] = &[
    ("lb1", "|Ω₀−Ω₁| < 1/n and Ω₁ ≤ Ω₂ ≤ 2Ω₁, exact, n ≤ 7"),
    ("deg", "Ω₂(G,deg) = Ω₂(G) and Ω₁(G) ≤ Ω₁(G,deg) ≤ 2Ω₁(G), n ≤ 8"),
    ("comp", "Ω₀(Gᶜ, reversed, A) = Ω₀(G, order, A), n ≤ 12"),
    ("nonempty", "Ω₁(G) ≥ 1/n³ for non-empty G, 0 for empty, n ≤ 7"),
    ("omega3", "½Ω₁ ≤ Ω₃ ≤ Ω₁^{1/2}, exact, n ≤ 8"),
    ("zero", "Ω₀(G, deg) = 0 ⇔ threshold ⇔ degree order nested, n ≤ 14"),
    ("ld2", "kernel Ω_j of W_G = graph Ω_j at the same order, n ≤ 8"),
    ("ld3", "kernel Ω₂ of W_G at the marginal order = Ω₂(G), n ≤ 8"),
    ("kequiv", "kernel Ω₁ ≤ Ω₂ ≤ 2Ω₁ and marginal order exact for Ω₂, k ≤ 7"),
    ("kzero", "kernel Ω₂ = 0 ⇔ marginal sort is monotone, k ≤ 7"),
    ("goxx0", "min goxx = 0 ⇔ marginal sort is monotone and 0/1, k ≤ 9"),
    ("marg", "‖marginal(D)‖₁ ≤ ‖D‖□, k ≤ 16"),
    ("lw1", "‖coarsen_k(D)‖₁ ≤ √(2k)‖D‖□, k ≤ 16"),
    ("c1c2", "‖D‖□,01 ≤ ‖D‖□ ≤ 4‖D‖□,01, k ≤ 16"),
    ("contract", "coarsening does not increase L¹ or cut norm, k ≤ 16"),
    ("tv3", "L¹ ≤ 10·cut^{2/3} for monotone pairs, k ≤ 16"),
    ("sandwich", "W⁻ ≤ W ≤ W⁺ entrywise and ‖W⁺−W⁻‖₁ ≤ 4/n"),
    ("ld1", "|Ω_j(W₁,≺) − Ω_j(W₂,≺)| ≤ j‖W₁−W₂‖□, k ≤ 8"),
    ("lt1", "|goxx(W₁,≺) − goxx(W₂,≺)| ≤ 2‖W₁−W₂‖□, k ≤ 12"),
    ("tilde", "Ω̃_j ≥ Ω_j at every subset, |Ω̃₀−Ω̃₁| ≤ 1/n, degree order minimizes Ω̃₁, n ≤ 7"),
    ("edit", "edit distance DP = labeled threshold brute force, n ≤ 6"),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub suite: String,
    pub trial: usize,
    pub size: usize,
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub rows: Vec<CheckRow>,
}

pub const SUITE_HEADER: &str = "suite,trial,size,check,lhs,rhs,ok";

impl SuiteResult {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SUITE_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.suite, r.trial, r.size, r.check, r.lhs, r.rhs, r.ok as u8
            ));
        }
        out
    }
}

/// Collects the checks of one trial.
struct Trial {
    size: usize,
    rows: Vec<(String, f64, f64, bool)>,
}

impl Trial {
    fn new(size: usize) -> Self {
        Trial { size, rows: Vec::new() }
    }

    fn push(&mut self, check: &str, lhs: f64, rhs: f64, ok: bool) {
        self.rows.push((check.to_string(), lhs, rhs, ok));
    }

    fn le(&mut self, check: &str, lhs: f64, rhs: f64) {
        self.push(check, lhs, rhs, lhs <= rhs + FLOAT_TOL);
    }

    fn eq(&mut self, check: &str, lhs: f64, rhs: f64) {
        self.push(check, lhs, rhs, (lhs - rhs).abs() <= FLOAT_TOL);
    }

    fn le_exact(&mut self, check: &str, lhs: Rational, rhs: Rational) {
        self.push(check, ratio_to_f64(lhs), ratio_to_f64(rhs), lhs <= rhs);
    }

    fn lt_exact(&mut self, check: &str, lhs: Rational, rhs: Rational) {
        self.push(check, ratio_to_f64(lhs), ratio_to_f64(rhs), lhs < rhs);
    }

    fn eq_exact(&mut self, check: &str, lhs: Rational, rhs: Rational) {
        self.push(check, ratio_to_f64(lhs), ratio_to_f64(rhs), lhs == rhs);
    }

    fn same(&mut self, check: &str, lhs: bool, rhs: bool) {
        self.push(check, lhs as u8 as f64, rhs as u8 as f64, lhs == rhs);
    }
}

fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize, seed: Seed) -> Result<Graph> {
    let n = rng.random_range(lo..=hi);
    let p = rng.random_range(0.1..0.9);
    gnp(n, p, seed.derive(1))
}

fn random_order(rng: &mut ChaCha8Rng, n: usize) -> VertexOrder {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    VertexOrder::new(p).expect("shuffle")
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|_| rng.random::<bool>())).expect("in range")
}

fn random_signed(rng: &mut ChaCha8Rng, k: usize) -> SignedStepFunction {
    let mut v = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            let x = rng.random_range(-1.0..=1.0);
            v[i * k + j] = x;
            v[j * k + i] = x;
        }
    }
    SignedStepFunction::new(random_weights(rng, k), v).expect("valid")
}

/// Equal weights half of the time, otherwise random positive weights.
fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    if rng.random::<bool>() {
        return vec![1.0 / k as f64; k];
    }
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let head: f64 = w[..k - 1].iter().sum();
    w[k - 1] = 1.0 - head;
    w
}

fn random_kernel(rng: &mut ChaCha8Rng, k: usize, weights: Vec<f64>) -> StepKernel {
    let zero_one = rng.random_ratio(1, 3);
    let mut v = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            let x = if zero_one {
                rng.random::<bool>() as u8 as f64
            } else {
                rng.random::<f64>()
            };
            v[i * k + j] = x;
            v[j * k + i] = x;
        }
    }
    StepKernel::new(weights, v).expect("valid")
}

fn random_grouping(rng: &mut ChaCha8Rng, k: usize, groups: usize) -> Vec<usize> {
    let mut g: Vec<usize> = (0..k).map(|i| i % groups).collect();
    g.shuffle(rng);
    g
}

fn exact_min(g: &Graph, variant: Variant, limits: &Limits) -> Result<Rational> {
    Ok(omega_min_order(g, variant, OrderStrategy::Exact, SubsetStrategy::Exact, limits)?
        .rational()
        .expect("graph values are rational"))
}

fn at_order(g: &Graph, order: &VertexOrder, variant: Variant, limits: &Limits) -> Result<Rational> {
    Ok(omega_max_subset(g, order, variant, SubsetStrategy::Exact, limits)?
        .rational()
        .expect("graph values are rational"))
}

fn cut(d: &SignedStepFunction, mode: CutMode, limits: &Limits) -> Result<f64> {
    Ok(cut_norm(d, mode, CutStrategy::Exact, limits)?.value)
}

/// All labeled threshold graphs on `n` vertices, as row masks.
fn labeled_thresholds(n: usize) -> Vec<Vec<u64>> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut seen = HashSet::new();
    for p in perms(n) {
        for roles in 0u64..(1 << n.saturating_sub(1)) {
            let r: Vec<bool> = (0..n).map(|j| j > 0 && (roles >> (j - 1)) & 1 == 1).collect();
            let cs = CreationSequence::new(VertexOrder::new(p.clone()).expect("perm"), r).expect("len");
            seen.insert(threshold_from_creation(&cs).row_masks());
        }
    }
    seen.into_iter().collect()
}

fn run_trial(suite: &str, trial: usize, seed: Seed, limits: &Limits, table: &[Vec<Vec<u64>>]) -> Result<Trial> {
    let tseed = seed.derive(trial as u64);
    let mut rng = tseed.rng(0);
    let rng = &mut rng;
    let t = match suite {
        "lb1" => {
            let g = random_graph(rng, 2, 7, tseed)?;
            let n = g.n();
            let mut t = Trial::new(n);
            let o0 = exact_min(&g, Variant::Omega0, limits)?;
            let o1 = exact_min(&g, Variant::Omega1, limits)?;
            let o2 = exact_min(&g, Variant::Omega2, limits)?;
            t.lt_exact("|O0-O1|<1/n", (o0 - o1).abs(), Rational::new(1, n as i64));
            t.le_exact("O1<=O2", o1, o2);
            t.le_exact("O2<=2O1", o2, o1 * 2);
            t
        }
        "deg" => {
            let g = random_graph(rng, 2, 8, tseed)?;
            let mut t = Trial::new(g.n());
            let deg = degree_order(&g);
            t.eq_exact("O2(deg)=O2", at_order(&g, &deg, Variant::Omega2, limits)?, exact_min(&g, Variant::Omega2, limits)?);
            let o1 = exact_min(&g, Variant::Omega1, limits)?;
            let d1 = at_order(&g, &deg, Variant::Omega1, limits)?;
            t.le_exact("O1<=O1(deg)", o1, d1);
            t.le_exact("O1(deg)<=2O1", d1, o1 * 2);
            t
        }
        "comp" => {
            let g = random_graph(rng, 1, 12, tseed)?;
            let n = g.n();
            let mut t = Trial::new(n);
            let o = random_order(rng, n);
            let a = random_set(rng, n);
            t.eq_exact("O0(Gc,rev,A)=O0(G,ord,A)", omega0_at(&g.complement(), &o.reversed(), &a), omega0_at(&g, &o, &a));
            t
        }
        "nonempty" => {
            let g = random_graph(rng, 1, 7, tseed)?;
            let n = g.n();
            let mut t = Trial::new(n);
            let o1 = exact_min(&g, Variant::Omega1, limits)?;
            if g.edge_count() == 0 {
                t.eq_exact("O1(empty)=0", o1, Rational::from_integer(0));
            } else {
                t.le_exact("1/n^3<=O1", Rational::new(1, (n as i64).pow(3)), o1);
            }
            t
        }
        "omega3" => {
            let g = random_graph(rng, 2, 8, tseed)?;
            let mut t = Trial::new(g.n());
            let o1 = exact_min(&g, Variant::Omega1, limits)?;
            let o3 = exact_min(&g, Variant::Omega3, limits)?;
            t.le_exact("O1/2<=O3", o1 / 2, o3);
            t.push("O3<=sqrt(O1)", ratio_to_f64(o3), ratio_to_f64(o1).sqrt(), o3 * o3 <= o1);
            t
        }
        "zero" => {
            let n = rng.random_range(1..=14);
            let mut g = random_threshold(n, tseed.derive(2));
            if n >= 2 && rng.random::<bool>() {
                let u = rng.random_range(0..n);
                let v = (u + rng.random_range(1..n)) % n;
                g.set_edge(u, v, !g.has_edge(u, v));
            }
            let mut t = Trial::new(n);
            let deg = degree_order(&g);
            let zero = at_order(&g, &deg, Variant::Omega0, limits)? == Rational::from_integer(0);
            t.same("O0(deg)=0<=>threshold", zero, is_threshold(&g).is_some());
            t.same("O0(deg)=0<=>nested", zero, is_nested_order(&g, &deg));
            t
        }
        "ld2" => {
            let g = random_graph(rng, 1, 8, tseed)?;
            let n = g.n();
            let mut t = Trial::new(n);
            let o = random_order(rng, n);
            let w = kernel_from_graph(&g, &o);
            for v in [Variant::Omega1, Variant::Omega2] {
                let k = kernel_omega_at(&w, &VertexOrder::identity(n), v, SubsetStrategy::Exact, limits)?;
                let name = format!("kernel O{}=graph O{}", v.index(), v.index());
                t.eq_exact(&name, k.rational().expect("0/1 kernel"), at_order(&g, &o, v, limits)?);
            }
            t
        }
        "ld3" => {
            let g = random_graph(rng, 1, 8, tseed)?;
            let n = g.n();
            let mut t = Trial::new(n);
            let w = kernel_from_graph(&g, &random_order(rng, n));
            let k = kernel_omega_min(&w, Variant::Omega2, KernelOrderStrategy::Marginal, limits)?;
            t.eq_exact("kernel O2(marginal)=O2(G)", k.rational().expect("0/1 kernel"), exact_min(&g, Variant::Omega2, limits)?);
            t
        }
        "kequiv" => {
            let k = rng.random_range(2..=7);
            let weights = random_weights(rng, k);
            let w = random_kernel(rng, k, weights);
            let mut t = Trial::new(k);
            let v = |var, s| kernel_omega_min(&w, var, s, limits).map(|r| r.value_f64());
            let o1 = v(Variant::Omega1, KernelOrderStrategy::Exact)?;
            let o2 = v(Variant::Omega2, KernelOrderStrategy::Exact)?;
            t.le("O1<=O2", o1, o2);
            t.le("O2<=2O1", o2, 2.0 * o1);
            t.eq("O2(marginal)=O2", v(Variant::Omega2, KernelOrderStrategy::Marginal)?, o2);
            t
        }
        "kzero" => {
            let k = rng.random_range(2..=7);
            let w = if rng.random::<bool>() {
                let m = random_monotone(k, rng.random());
                let mut p: Vec<usize> = (0..k).collect();
                p.shuffle(rng);
                m.permuted(&p)
            } else {
                let weights = random_weights(rng, k);
                random_kernel(rng, k, weights)
            };
            let mut t = Trial::new(k);
            let o2 = kernel_omega_min(&w, Variant::Omega2, KernelOrderStrategy::Marginal, limits)?.value_f64();
            t.same("O2=0<=>sorted monotone", o2 <= FLOAT_TOL, sort_by_marginal(&w).0.is_monotone());
            t
        }
        "goxx0" => {
            let k = rng.random_range(1..=9);
            let w = match rng.random_range(0..3) {
                0 => {
                    let m = random_monotone(k, rng.random());
                    let level = rng.random_range(0.1..0.9);
                    let mut p: Vec<usize> = (0..k).collect();
                    p.shuffle(rng);
                    StepKernel::from_fn(k, |i, j| (m.at(i, j) >= level) as u8 as f64)
                        .expect("0/1")
                        .permuted(&p)
                }
                1 => random_monotone(k, rng.random()),
                _ => {
                    let weights = random_weights(rng, k);
                    random_kernel(rng, k, weights)
                }
            };
            let mut t = Trial::new(k);
            let sorted = sort_by_marginal(&w).0;
            t.same(
                "goxx_min=0<=>sorted monotone 0/1",
                kernel_goxx_min(&w).value_f64() <= FLOAT_TOL,
                sorted.is_monotone() && sorted.is_zero_one(),
            );
            t
        }
        "marg" => {
            let k = rng.random_range(1..=16);
            let d = random_signed(rng, k);
            let mut t = Trial::new(k);
            let m: f64 = d.marginal().iter().zip(d.weights()).map(|(x, w)| x.abs() * w).sum();
            t.le("|marginal|_1<=cut", m, cut(&d, CutMode::Pm, limits)?);
            t
        }
        "lw1" => {
            let k = rng.random_range(1..=16);
            let d = random_signed(rng, k);
            let groups = rng.random_range(1..=k);
            let c = coarsen_signed(&d, &random_grouping(rng, k, groups))?;
            let mut t = Trial::new(k);
            t.le("|coarsen|_1<=sqrt(2k)cut", c.l1_norm(), (2.0 * groups as f64).sqrt() * cut(&d, CutMode::Pm, limits)?);
            t
        }
        "c1c2" => {
            let k = rng.random_range(1..=16);
            let d = random_signed(rng, k);
            let mut t = Trial::new(k);
            let pm = cut(&d, CutMode::Pm, limits)?;
            let zo = cut(&d, CutMode::ZeroOne, limits)?;
            t.le("zeroone<=pm", zo, pm);
            t.le("pm<=4zeroone", pm, 4.0 * zo);
            t
        }
        "contract" => {
            let k = rng.random_range(1..=16);
            let d = random_signed(rng, k);
            let groups = rng.random_range(1..=k);
            let c = coarsen_signed(&d, &random_grouping(rng, k, groups))?;
            let mut t = Trial::new(k);
            t.le("|coarsen|_1<=|D|_1", c.l1_norm(), d.l1_norm());
            t.le("cut(coarsen)<=cut(D)", cut(&c, CutMode::Pm, limits)?, cut(&d, CutMode::Pm, limits)?);
            t
        }
        "tv3" => {
            let k = rng.random_range(1..=16);
            let a = random_monotone(k, rng.random());
            let b = random_monotone(k, rng.random());
            let mut t = Trial::new(k);
            let c = cut(&difference(&a, &b)?, CutMode::Pm, limits)?;
            t.le("L1<=10cut^(2/3)", l1_distance(&a, &b)?, 10.0 * c.powf(2.0 / 3.0));
            t
        }
        "sandwich" => {
            let n = rng.random_range(1..=8);
            let r = rng.random_range(1..=4);
            let w = random_monotone(n * r, rng.random());
            let (lo, avg, hi) = sandwich(&w, n)?;
            let mut t = Trial::new(n * r);
            let (lo_f, avg_f, hi_f) = (lo.refine(r), avg.refine(r), hi.refine(r));
            let below = (0..n * r * n * r).all(|i| lo_f.values()[i] <= w.values()[i] + FLOAT_TOL);
            let above = (0..n * r * n * r).all(|i| w.values()[i] <= hi_f.values()[i] + FLOAT_TOL);
            let mid = (0..n * r * n * r)
                .all(|i| lo_f.values()[i] <= avg_f.values()[i] + FLOAT_TOL && avg_f.values()[i] <= hi_f.values()[i] + FLOAT_TOL);
            t.push("W-<=W", below as u8 as f64, 1.0, below);
            t.push("W<=W+", above as u8 as f64, 1.0, above);
            t.push("W-<=Wn<=W+", mid as u8 as f64, 1.0, mid);
            t.le("|W+-W-|_1<=4/n", l1_distance(&hi, &lo)?, 4.0 / n as f64);
            t
        }
        "ld1" => {
            let k = rng.random_range(1..=8);
            let weights = random_weights(rng, k);
            let a = random_kernel(rng, k, weights.clone());
            let b = random_kernel(rng, k, weights);
            let o = random_order(rng, k);
            let c = cut(&difference(&a, &b)?, CutMode::Pm, limits)?;
            let mut t = Trial::new(k);
            for (j, v) in [(1.0, Variant::Omega1), (2.0, Variant::Omega2)] {
                let x = kernel_omega_at(&a, &o, v, SubsetStrategy::Exact, limits)?.value_f64();
                let y = kernel_omega_at(&b, &o, v, SubsetStrategy::Exact, limits)?.value_f64();
                t.le(&format!("|dO{}|<={}cut", v.index(), j), (x - y).abs(), j * c);
            }
            t
        }
        "lt1" => {
            let k = rng.random_range(1..=12);
            let weights = random_weights(rng, k);
            let a = random_kernel(rng, k, weights.clone());
            let b = random_kernel(rng, k, weights);
            let o = random_order(rng, k);
            let mut t = Trial::new(k);
            let d = (kernel_goxx(&a, &o) - kernel_goxx(&b, &o)).abs();
            t.le("|dgoxx|<=2cut", d, 2.0 * cut(&difference(&a, &b)?, CutMode::Pm, limits)?);
            t
        }
        "tilde" => {
            let g = random_graph(rng, 1, 7, tseed)?;
            let n = g.n();
            let mut t = Trial::new(n);
            let o = random_order(rng, n);
            let (t0, t1) = (omega_tilde0(&g, &o), omega_tilde1(&g, &o));
            t.le_exact("O~0>=max_A O0", at_order(&g, &o, Variant::Omega0, limits)?, t0);
            t.le_exact("O~1>=max_A O1", at_order(&g, &o, Variant::Omega1, limits)?, t1);
            t.le_exact("|O~0-O~1|<=1/n", t1 - t0, Rational::new(1, n as i64));
            let deg = omega_tilde1(&g, &degree_order(&g));
            let mut best = deg;
            let mut p: Vec<usize> = (0..n).collect();
            permute_all(&mut p, 0, &mut |q| {
                let v = omega_tilde1(&g, &VertexOrder::new(q.to_vec()).expect("perm"));
                if v < best {
                    best = v;
                }
            });
            t.eq_exact("O~1(deg)=min", deg, best);
            t
        }
        "edit" => {
            let g = random_graph(rng, 1, 6, tseed)?;
            let n = g.n();
            let mut t = Trial::new(n);
            let dp = threshold_edit_distance(&g, EditStrategy::Exact, limits)?.distance;
            let rows = g.row_masks();
            let brute = table[n]
                .iter()
                .map(|h| h.iter().zip(&rows).map(|(a, b)| (a ^ b).count_ones()).sum::<u32>() / 2)
                .min()
                .expect("nonempty") as usize;
            t.push("dp=brute", dp as f64, brute as f64, dp == brute);
            t
        }
        other => return Err(Error::InvalidArgument(format!("unknown suite `{other}`"))),
    };
    Ok(t)
}

fn permute_all(p: &mut [usize], i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute_all(p, i + 1, f);
        p.swap(i, j);
    }
}

pub fn is_known_suite(name: &str) -> bool {
    SUITES.iter().any(|(s, _)| *s == name)
}

/// Runs `trials` instances of a suite. Rows are ordered by trial.
pub fn run_suite(name: &str, trials: usize, seed: Seed, limits: &Limits) -> Result<SuiteResult> {
    if !is_known_suite(name) {
        return Err(Error::InvalidArgument(format!("unknown suite `{name}`")));
    }
    let table: Vec<Vec<Vec<u64>>> = if name == "edit" {
        (0..=6).map(labeled_thresholds).collect()
    } else {
        Vec::new()
    };
    let trials: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(name, i, seed, limits, &table))
        .collect::<Result<_>>()?;
    let rows = trials
        .into_iter()
        .enumerate()
        .flat_map(|(i, t)| {
            let size = t.size;
            t.rows.into_iter().map(move |(check, lhs, rhs, ok)| CheckRow {
                suite: name.to_string(),
                trial: i,
                size,
                check,
                lhs,
                rhs,
                ok,
            })
        })
        .collect();
    Ok(SuiteResult {
        suite: name.to_string(),
        rows,
    })
}
