use std::path::PathBuf;

use clap::{Args, Subcommand};
use qm_core::functionals::{omega_max_subset, omega_min_order, OrderStrategy, SubsetStrategy, Variant};
use qm_core::graph::is_threshold;
use qm_core::io::parse_kernel;
use qm_core::kernel::functionals::{
    kernel_goxx, kernel_goxx_min, kernel_omega_at, kernel_omega_min, kernel_omega_tilde, KernelOrderStrategy,
};
use qm_core::kernel::{marginal_order, StepKernel};
use qm_core::norms::{cut_norm, difference, l1_distance, perm_cut_distance, perm_l1_distance, CutMode, CutStrategy, PermStrategy};
use qm_core::quasithreshold::{
    omega_tilde0, omega_tilde1, omega_tilde_min, quasithreshold_diagnostic, threshold_edit_distance, EditStrategy,
};
use qm_core::{BoundKind, Error, FunctionalReport, Graph, NormReport, Value, VertexOrder};
use serde_json::json;

use crate::output::Failure;
use crate::{parse_order, read, Format, Global};

#[derive(Args)]
pub struct ComputeArgs {
    #[command(subcommand)]
    functional: Functional,
}

#[derive(Subcommand)]
enum Functional {
    /// Ω_j of a graph (min over orders of max over subsets, or max at `--at`)
    Omega {
        #[arg(long, default_value_t = 1)]
        variant: u8,
        /// exact, degree or order_search
        #[arg(long, default_value = "exact")]
        order: String,
        /// exact or local_search
        #[arg(long, default_value = "exact")]
        subset: String,
        /// Evaluate at this vertex order (comma-separated) instead of minimizing
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<usize>>,
    },
    /// Ω̃_j of a graph, minimized by the degree order unless `--at` is given
    OmegaTilde {
        #[arg(long, default_value_t = 1)]
        variant: u8,
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<usize>>,
    },
    /// Edit distance to the nearest threshold graph
    EditThreshold {
        /// exact, dp_degree or dp_search
        #[arg(long, default_value = "exact")]
        strategy: String,
    },
    /// Threshold recognition with a creation sequence
    IsThreshold,
    /// Per-graph quasithreshold diagnostics over all `-i` graphs, in size order
    Diagnostic,
    /// Ω₁ or Ω₂ of a step kernel
    KernelOmega {
        #[arg(long, default_value_t = 2)]
        variant: u8,
        /// exact (atomic orders), marginal, refine:R or order_search
        #[arg(long, default_value = "marginal")]
        strategy: String,
        /// Evaluate at this part order instead of minimizing
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<usize>>,
    },
    /// Ω̃₁ of a step kernel, at the marginal order unless `--at` is given
    KernelOmegaTilde {
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<usize>>,
    },
    /// goxx of a step kernel, at the marginal order unless `--at` is given
    Goxx {
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<usize>>,
    },
    /// Cut norm of the input kernel, or of its difference with `--other`
    CutNorm {
        #[arg(long)]
        other: Option<PathBuf>,
        /// pm or zeroone
        #[arg(long, default_value = "pm")]
        mode: String,
        /// exact or local_search
        #[arg(long, default_value = "exact")]
        strategy: String,
    },
    /// Cut distance to `--other`, minimized over weight-preserving part permutations
    CutDistance {
        #[arg(long)]
        other: PathBuf,
        #[arg(long, default_value = "pm")]
        mode: String,
        /// exact or marginal_align
        #[arg(long, default_value = "exact")]
        perm: String,
    },
    /// L¹ distance to `--other`, optionally minimized over part permutations
    L1Distance {
        #[arg(long)]
        other: PathBuf,
        /// exact or marginal_align
        #[arg(long)]
        perm: Option<String>,
    },
}

fn kernel(global: &Global) -> Result<StepKernel, Failure> {
    Ok(parse_kernel(&global.single_input()?)?)
}

fn other_kernel(path: &PathBuf) -> Result<StepKernel, Failure> {
    Ok(parse_kernel(&read(path)?)?)
}

fn variant(j: u8) -> Result<Variant, Failure> {
    Ok(Variant::from_index(j)?)
}

fn part_order(w: &StepKernel, at: Option<Vec<usize>>) -> Result<(VertexOrder, &'static str), Failure> {
    match at {
        Some(at) => Ok((parse_order(w.k(), &at)?, "at_order")),
        None => Ok((VertexOrder::new(marginal_order(w))?, "marginal")),
    }
}

fn float_report(value: f64, order: VertexOrder, method: &str) -> FunctionalReport {
    FunctionalReport {
        value: Value::Float(value),
        bound: BoundKind::Exact,
        order: Some(order),
        subset: None,
        method: method.into(),
    }
}

/// Retries with heuristics when `--allow-heuristic` is set and the first
/// attempt hit a size limit.
fn with_fallback<T>(
    global: &Global,
    first: impl FnOnce() -> qm_core::Result<T>,
    fallback: impl FnOnce() -> Result<T, Failure>,
) -> Result<T, Failure> {
    match first() {
        Err(Error::SizeLimit { .. }) if global.allow_heuristic => fallback(),
        r => Ok(r?),
    }
}

fn omega(global: &Global, g: &Graph, j: u8, order: &str, subset: &str, at: Option<Vec<usize>>) -> Result<FunctionalReport, Failure> {
    let v = variant(j)?;
    let order: OrderStrategy = order.parse()?;
    let subset: SubsetStrategy = subset.parse()?;
    let limits = global.limits()?;
    let n = g.n();
    let subset_fallback = if n > limits.exact_subset { SubsetStrategy::LocalSearch } else { subset };
    if let Some(at) = at {
        let o = parse_order(n, &at)?;
        return with_fallback(
            global,
            || omega_max_subset(g, &o, v, subset, &limits),
            || Ok(omega_max_subset(g, &o, v, subset_fallback, &limits)?),
        );
    }
    let order_fallback = match order {
        OrderStrategy::Exact if n > limits.exact_order => OrderStrategy::OrderSearch,
        o => o,
    };
    with_fallback(
        global,
        || omega_min_order(g, v, order, subset, &limits),
        || Ok(omega_min_order(g, v, order_fallback, subset_fallback, &limits)?),
    )
}

fn omega_tilde(g: &Graph, j: u8, at: Option<Vec<usize>>) -> Result<FunctionalReport, Failure> {
    let value = match j {
        0 => omega_tilde0,
        1 => omega_tilde1,
        _ => return Err(Failure::usage("omega-tilde variant must be 0 or 1")),
    };
    let (order, method) = match at {
        Some(at) => (parse_order(g.n(), &at)?, "at_order"),
        None => (omega_tilde_min(g).order.expect("degree order"), "degree"),
    };
    Ok(FunctionalReport {
        value: Value::Rational(value(g, &order)),
        bound: BoundKind::Exact,
        order: Some(order),
        subset: None,
        method: method.into(),
    })
}

fn cut_strategy(global: &Global, name: &str) -> Result<CutStrategy, Failure> {
    match name {
        "exact" => Ok(CutStrategy::Exact),
        "local_search" | "local-search" => Ok(CutStrategy::LocalSearch(global.seed("cut-norm local search")?)),
        _ => Err(Failure::usage(format!("unknown cut-norm strategy `{name}`"))),
    }
}

fn to_json(value: &impl serde::Serialize) -> serde_json::Value {
    serde_json::to_value(value).expect("serializable")
}

/// One header line and one value line; arrays are joined with `;`.
fn flat_csv(v: &serde_json::Value) -> String {
    let Some(obj) = v.as_object() else {
        return format!("{v}\n");
    };
    let cell = |x: &serde_json::Value| match x {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(a) => a.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    };
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let vals: Vec<String> = obj.values().map(cell).collect();
    format!("{}\n{}\n", keys.join(","), vals.join(","))
}

pub fn run(global: &Global, args: ComputeArgs) -> Result<(), Failure> {
    let limits = global.limits()?;
    let out: serde_json::Value = match args.functional {
        Functional::Omega { variant, order, subset, at } => {
            to_json(&omega(global, &global.graph()?, variant, &order, &subset, at)?)
        }
        Functional::OmegaTilde { variant, at } => to_json(&omega_tilde(&global.graph()?, variant, at)?),
        Functional::EditThreshold { strategy } => {
            let g = global.graph()?;
            let s: EditStrategy = strategy.parse()?;
            to_json(&with_fallback(
                global,
                || threshold_edit_distance(&g, s, &limits),
                || Ok(threshold_edit_distance(&g, EditStrategy::DpSearch, &limits)?),
            )?)
        }
        Functional::IsThreshold => {
            let g = global.graph()?;
            match is_threshold(&g) {
                Some(cs) => json!({
                    "threshold": true,
                    "order": cs.order,
                    "roles": cs.roles.iter().map(|&r| r as u8).collect::<Vec<_>>(),
                }),
                None => json!({ "threshold": false }),
            }
        }
        Functional::Diagnostic => {
            let graphs: Vec<Graph> = global
                .input
                .iter()
                .map(|p| read(p).and_then(|s| Ok(qm_core::io::parse_graph(&s)?)))
                .collect::<Result<_, _>>()?;
            if graphs.is_empty() {
                return Err(Failure::usage("diagnostic needs at least one -i graph"));
            }
            let d = quasithreshold_diagnostic(&graphs, &limits)?;
            if global.format_or(Format::Json) == Format::Csv {
                return global.emit(&d.to_csv());
            }
            to_json(&d)
        }
        Functional::KernelOmega { variant: j, strategy, at } => {
            let w = kernel(global)?;
            let v = variant(j)?;
            let report = match at {
                Some(at) => kernel_omega_at(&w, &parse_order(w.k(), &at)?, v, SubsetStrategy::Exact, &limits)?,
                None => {
                    let s: KernelOrderStrategy = strategy.parse()?;
                    with_fallback(
                        global,
                        || kernel_omega_min(&w, v, s, &limits),
                        || Ok(kernel_omega_min(&w, v, KernelOrderStrategy::OrderSearch, &limits)?),
                    )?
                }
            };
            to_json(&report)
        }
        Functional::KernelOmegaTilde { at } => {
            let w = kernel(global)?;
            let (order, method) = part_order(&w, at)?;
            to_json(&float_report(kernel_omega_tilde(&w, &order), order, method))
        }
        Functional::Goxx { at } => {
            let w = kernel(global)?;
            let report = match at {
                Some(at) => {
                    let order = parse_order(w.k(), &at)?;
                    float_report(kernel_goxx(&w, &order), order, "at_order")
                }
                None => kernel_goxx_min(&w),
            };
            to_json(&report)
        }
        Functional::CutNorm { other, mode, strategy } => {
            let w = kernel(global)?;
            let d = match other {
                Some(p) => difference(&w, &other_kernel(&p)?)?,
                None => w.into_signed(),
            };
            let mode: CutMode = mode.parse()?;
            let s = cut_strategy(global, &strategy)?;
            let report: NormReport = with_fallback(
                global,
                || cut_norm(&d, mode, s, &limits),
                || Ok(cut_norm(&d, mode, cut_strategy(global, "local_search")?, &limits)?),
            )?;
            to_json(&report)
        }
        Functional::CutDistance { other, mode, perm } => {
            let (a, b) = (kernel(global)?, other_kernel(&other)?);
            let p: PermStrategy = perm.parse()?;
            to_json(&perm_cut_distance(&a, &b, mode.parse()?, p, &limits)?)
        }
        Functional::L1Distance { other, perm } => {
            let (a, b) = (kernel(global)?, other_kernel(&other)?);
            let report = match perm {
                Some(p) => perm_l1_distance(&a, &b, p.parse()?)?,
                None => NormReport {
                    value: l1_distance(&a, &b)?,
                    bound: BoundKind::Exact,
                    witness_f: None,
                    witness_g: None,
                    witness_perm: None,
                    method: "l1".into(),
                },
            };
            to_json(&report)
        }
    };
    let text = match global.format_or(Format::Json) {
        Format::Csv => flat_csv(&out),
        _ => serde_json::to_string_pretty(&out).expect("serializable") + "\n",
    };
    global.emit(&text)
}
