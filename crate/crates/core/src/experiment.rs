//! Experiment drivers producing long-format rows
//! `experiment,n,seed,metric,variant,order_strategy,subset_strategy,value,bound,runtime_ms`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{omega_max_subset, omega_min_order, OrderStrategy, SubsetStrategy, Variant};
use crate::graph::{degree_order, Graph, VertexOrder};
use crate::kernel::functionals::{kernel_omega_min, KernelOrderStrategy};
use crate::kernel::generators::{additive_kernel, kmm_kernel, pair_23best};
use crate::limits::Limits;
use crate::norms::{cut_norm, difference, CutMode, CutStrategy};
use crate::quasithreshold::{omega_tilde_min, threshold_edit_distance, EditStrategy};
use crate::report::{BoundKind, FunctionalReport};
use crate::sampling::{gnp, gnw, kmm_graph, Seed};
use crate::suites::{run_suite, SUITES};

pub const CSV_HEADER: &str =
    "experiment,n,seed,metric,variant,order_strategy,subset_strategy,value,bound,runtime_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    Convergence,
    Quasirandom,
    InequalitySuite,
    KmmTable,
    Tightness,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::Quasirandom => "quasirandom",
            ExperimentKind::InequalitySuite => "inequality-suite",
            ExperimentKind::KmmTable => "kmm-table",
            ExperimentKind::Tightness => "tightness",
        })
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convergence" => Ok(ExperimentKind::Convergence),
            "quasirandom" => Ok(ExperimentKind::Quasirandom),
            "inequality-suite" => Ok(ExperimentKind::InequalitySuite),
            "kmm-table" => Ok(ExperimentKind::KmmTable),
            "tightness" => Ok(ExperimentKind::Tightness),
            _ => Err(Error::InvalidArgument(format!("unknown experiment `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Vertex counts, `m` for `kmm-table`, part counts for `tightness`,
    /// trial counts for `inequality-suite`.
    pub sizes: Vec<usize>,
    pub seeds: usize,
    pub base_seed: Seed,
    /// Subset strategy where a choice exists; `None` picks exact within the
    /// subset limit and local search beyond it.
    pub subset: Option<SubsetStrategy>,
    /// Parts of the additive kernel sampled by `convergence`.
    pub kernel_parts: usize,
    pub timing: bool,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, sizes: Vec<usize>, seeds: usize, base_seed: Seed) -> Self {
        ExperimentSpec {
            kind,
            sizes,
            seeds,
            base_seed,
            subset: None,
            kernel_parts: 64,
            timing: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::InvalidArgument("sizes must be nonempty".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("sizes must be strictly ascending".into()));
        }
        if self.seeds == 0 {
            return Err(Error::InvalidArgument("at least one seed is required".into()));
        }
        if self.kernel_parts == 0 {
            return Err(Error::InvalidArgument("kernel needs at least one part".into()));
        }
        Ok(())
    }

    /// Seed of cell `(n, s)`.
    pub fn cell_seed(&self, n: usize, s: usize) -> Seed {
        self.base_seed.derive(s as u64).derive(n as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub experiment: String,
    pub n: usize,
    pub seed: u64,
    pub metric: String,
    pub variant: String,
    pub order_strategy: String,
    pub subset_strategy: String,
    pub value: f64,
    pub bound: BoundKind,
    pub runtime_ms: f64,
}

impl Row {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.experiment,
            self.n,
            self.seed,
            self.metric,
            self.variant,
            self.order_strategy,
            self.subset_strategy,
            self.value,
            self.bound.as_str(),
            self.runtime_ms
        )
    }
}

pub fn rows_to_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Builds rows of one cell, timing every metric.
struct Cell<'a> {
    spec: &'a ExperimentSpec,
    n: usize,
    seed: u64,
    rows: Vec<Row>,
}

impl<'a> Cell<'a> {
    fn new(spec: &'a ExperimentSpec, n: usize, seed: u64) -> Self {
        Cell { spec, n, seed, rows: Vec::new() }
    }

    fn record(
        &mut self,
        metric: &str,
        variant: &str,
        order: &str,
        subset: &str,
        f: impl FnOnce() -> Result<(f64, BoundKind)>,
    ) -> Result<()> {
        let t = Instant::now();
        let (value, bound) = f()?;
        let ms = t.elapsed().as_secs_f64() * 1e3;
        self.rows.push(Row {
            experiment: self.spec.kind.to_string(),
            n: self.n,
            seed: self.seed,
            metric: metric.into(),
            variant: variant.into(),
            order_strategy: order.into(),
            subset_strategy: subset.into(),
            value,
            bound,
            runtime_ms: if self.spec.timing { (ms * 1e3).round() / 1e3 } else { 0.0 },
        });
        Ok(())
    }
}

fn value(r: FunctionalReport) -> (f64, BoundKind) {
    (r.value_f64(), r.bound)
}

fn subset_for(spec: &ExperimentSpec, n: usize, limits: &Limits) -> SubsetStrategy {
    spec.subset.unwrap_or(if n <= limits.exact_subset {
        SubsetStrategy::Exact
    } else {
        SubsetStrategy::LocalSearch
    })
}

/// Ω₂ at the degree order, min Ω̃₁ and edit density of one sampled graph.
fn graph_metrics(cell: &mut Cell, g: &Graph, limits: &Limits) -> Result<()> {
    let n = g.n();
    let subset = subset_for(cell.spec, n, limits);
    let sname = subset.to_string();
    cell.record("omega", "2", "degree", &sname, || {
        omega_max_subset(g, &degree_order(g), Variant::Omega2, subset, limits).map(value)
    })?;
    cell.record("omega_tilde1", "", "degree", "", || Ok(value(omega_tilde_min(g))))?;
    cell.record("edit_density", "", "dp_search", "", || {
        let e = threshold_edit_distance(g, EditStrategy::DpSearch, limits)?;
        Ok((2.0 * e.distance as f64 / (n * n).max(1) as f64, e.bound))
    })?;
    Ok(())
}

fn sampled_cells(
    spec: &ExperimentSpec,
    limits: &Limits,
    sample: impl Fn(usize, Seed) -> Result<Graph> + Sync,
) -> Result<Vec<Row>> {
    let cells: Vec<(usize, usize)> = spec
        .sizes
        .iter()
        .flat_map(|&n| (0..spec.seeds).map(move |s| (n, s)))
        .collect();
    let parts: Vec<Vec<Row>> = cells
        .par_iter()
        .map(|&(n, s)| {
            let seed = spec.cell_seed(n, s);
            let g = sample(n, seed)?;
            let mut cell = Cell::new(spec, n, seed.0);
            graph_metrics(&mut cell, &g, limits)?;
            Ok(cell.rows)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

fn kmm_rows(spec: &ExperimentSpec, limits: &Limits) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &m in &spec.sizes {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let g = kmm_graph(m);
        let mut cell = Cell::new(spec, m, 0);
        for j in 0..4u8 {
            let v = Variant::from_index(j)?;
            cell.record("omega", &j.to_string(), "exact", "exact", || {
                omega_min_order(&g, v, OrderStrategy::Exact, SubsetStrategy::Exact, limits).map(value)
            })?;
        }
        cell.record("omega", "1", "blocks_first", "exact", || {
            omega_max_subset(&g, &VertexOrder::identity(2 * m), Variant::Omega1, SubsetStrategy::Exact, limits)
                .map(value)
        })?;
        let w = kmm_kernel(1, 1);
        cell.record("kernel_omega", "1", &format!("refined({m})"), "exact", || {
            kernel_omega_min(&w, Variant::Omega1, KernelOrderStrategy::Refine(m), limits).map(value)
        })?;
        rows.append(&mut cell.rows);
    }
    Ok(rows)
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn tightness_rows(spec: &ExperimentSpec, limits: &Limits) -> Result<Vec<Row>> {
    let cells: Vec<(usize, usize)> = spec
        .sizes
        .iter()
        .flat_map(|&k| (0..spec.seeds).map(move |s| (k, s)))
        .collect();
    let parts: Vec<Vec<Row>> = cells
        .par_iter()
        .map(|&(k, s)| {
            let seed = spec.cell_seed(k, s);
            let (a, b) = pair_23best(k, seed);
            let d = difference(&a, &b)?;
            let mut cell = Cell::new(spec, k, seed.0);
            cell.record("l1", "", "", "", || Ok((d.l1_norm(), BoundKind::Exact)))?;
            let strategy = if k <= limits.cutnorm {
                CutStrategy::Exact
            } else {
                CutStrategy::LocalSearch(seed.derive(7))
            };
            cell.record("cut", "pm", "", "", || {
                cut_norm(&d, CutMode::Pm, strategy, limits).map(|r| (r.value, r.bound))
            })?;
            Ok(cell.rows)
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<Row> = parts.into_iter().flatten().collect();
    if spec.sizes.len() >= 2 {
        let mean_log = |k: usize, metric: &str| {
            let v: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == k && r.metric == metric)
                .map(|r| r.value.ln())
                .collect();
            v.iter().sum::<f64>() / v.len() as f64
        };
        let pts: Vec<(f64, f64)> = spec.sizes.iter().map(|&k| (mean_log(k, "cut"), mean_log(k, "l1"))).collect();
        let exact = spec.sizes.iter().all(|&k| k <= limits.cutnorm);
        rows.push(Row {
            experiment: spec.kind.to_string(),
            n: 0,
            seed: spec.base_seed.0,
            metric: "slope_log_l1_vs_log_cut".into(),
            variant: "pm".into(),
            order_strategy: String::new(),
            subset_strategy: String::new(),
            value: fit_slope(&pts),
            bound: if exact { BoundKind::Exact } else { BoundKind::LowerBound },
            runtime_ms: 0.0,
        });
    }
    Ok(rows)
}

fn suite_rows(spec: &ExperimentSpec, limits: &Limits) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &trials in &spec.sizes {
        for s in 0..spec.seeds {
            let seed = spec.cell_seed(trials, s);
            let mut cell = Cell::new(spec, trials, seed.0);
            for (name, _) in SUITES {
                cell.record(&format!("violations_{name}"), "", "", "", || {
                    run_suite(name, trials, seed, limits).map(|r| (r.violations() as f64, BoundKind::Exact))
                })?;
            }
            rows.append(&mut cell.rows);
        }
    }
    Ok(rows)
}

/// Runs an experiment; rows are sorted by `(n, seed, metric, variant,
/// order_strategy)`.
pub fn run_experiment(spec: &ExperimentSpec, limits: &Limits) -> Result<Vec<Row>> {
    spec.validate()?;
    let mut rows = match spec.kind {
        ExperimentKind::Convergence => {
            let w = additive_kernel(spec.kernel_parts);
            sampled_cells(spec, limits, |n, seed| Ok(gnw(n, &w, seed)))?
        }
        ExperimentKind::Quasirandom => sampled_cells(spec, limits, |n, seed| gnp(n, 0.5, seed))?,
        ExperimentKind::KmmTable => kmm_rows(spec, limits)?,
        ExperimentKind::Tightness => tightness_rows(spec, limits)?,
        ExperimentKind::InequalitySuite => suite_rows(spec, limits)?,
    };
    rows.sort_by(|a, b| {
        (a.n, a.seed, &a.metric, &a.variant, &a.order_strategy)
            .cmp(&(b.n, b.seed, &b.metric, &b.variant, &b.order_strategy))
    });
    Ok(rows)
}

/// Mean of `metric` (and `variant`) at each `n`, in ascending `n`.
pub fn means(rows: &[Row], metric: &str, variant: &str) -> Vec<(usize, f64)> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.dedup();
    ns.into_iter()
        .filter_map(|n| {
            let v: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n && r.metric == metric && r.variant == variant)
                .map(|r| r.value)
                .collect();
            (!v.is_empty()).then(|| (n, v.iter().sum::<f64>() / v.len() as f64))
        })
        .collect()
}

/// Gnuplot script plotting the mean of every metric against `n`.
pub fn gnuplot_script(csv_path: &str, rows: &[Row]) -> String {
    let mut metrics: Vec<(String, String)> = rows.iter().map(|r| (r.metric.clone(), r.variant.clone())).collect();
    metrics.sort();
    metrics.dedup();
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset key left top\nset xlabel 'n'\nset ylabel 'value'\n");
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str(&format!("set output '{csv_path}.png'\n"));
    let plots: Vec<String> = metrics
        .iter()
        .map(|(m, v)| {
            format!(
                "'{csv_path}' using 2:((strcol(4) eq '{m}' && strcol(5) eq '{v}') ? $8 : 1/0) smooth unique with linespoints title '{m}{}'",
                if v.is_empty() { String::new() } else { format!(" {v}") }
            )
        })
        .collect();
    s.push_str("plot ");
    s.push_str(&plots.join(", \\\n     "));
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::ratio_to_f64;
    use crate::Rational;

    fn spec(kind: ExperimentKind, sizes: Vec<usize>, seeds: usize) -> ExperimentSpec {
        let mut s = ExperimentSpec::new(kind, sizes, seeds, Seed(5));
        s.timing = false;
        s
    }

    #[test]
    fn kmm_table_values() {
        let rows = run_experiment(&spec(ExperimentKind::KmmTable, vec![1, 2, 3, 4], 1), &Limits::default()).unwrap();
        let omega1: Vec<f64> = rows
            .iter()
            .filter(|r| r.metric == "omega" && r.variant == "1" && r.order_strategy == "exact")
            .map(|r| r.value)
            .collect();
        let expect = [r(1, 8), r(1, 16), r(5, 72), r(1, 16)].map(ratio_to_f64);
        assert_eq!(omega1, expect);
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn validation() {
        let l = Limits::default();
        assert!(run_experiment(&spec(ExperimentKind::Quasirandom, vec![], 1), &l).is_err());
        assert!(run_experiment(&spec(ExperimentKind::Quasirandom, vec![8, 6], 1), &l).is_err());
        assert!(run_experiment(&spec(ExperimentKind::Quasirandom, vec![8], 0), &l).is_err());
    }

    #[test]
    fn deterministic_without_timing() {
        let s = spec(ExperimentKind::Convergence, vec![6, 9], 2);
        let a = rows_to_csv(&run_experiment(&s, &Limits::default()).unwrap());
        let b = rows_to_csv(&run_experiment(&s, &Limits::default()).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert_eq!(a.lines().count(), 1 + 2 * 2 * 3);
    }

    #[test]
    fn tightness_has_slope_row() {
        let rows = run_experiment(&spec(ExperimentKind::Tightness, vec![8, 12], 1), &Limits::default()).unwrap();
        assert!(rows.iter().any(|r| r.metric == "slope_log_l1_vs_log_cut"));
    }

    #[test]
    fn slope_fit() {
        assert!((fit_slope(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]) - 2.0).abs() < 1e-12);
    }
}
