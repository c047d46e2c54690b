//! `qm`: compute functionals, run inequality suites and experiments,
//! sample and convert graphs and kernels.

mod compute;
mod settings;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qm_core::experiment::{gnuplot_script, rows_to_csv, run_experiment, ExperimentKind, ExperimentSpec};
use qm_core::functionals::SubsetStrategy;
use qm_core::io::{graph_to_json, graph_to_text, kernel_to_json, kernel_to_text, parse_graph, parse_kernel};
use qm_core::kernel::generators::additive_kernel;
use qm_core::kernel::kernel_from_graph;
use qm_core::sampling::{gnp, gnw, kmm_graph, random_threshold, Seed};
use qm_core::suites::{is_known_suite, run_suite, SuiteResult, SUITES, SUITE_HEADER};
use qm_core::{Graph, Limits, VertexOrder};

use crate::output::{emit, Failure};
use crate::settings::LimitFlags;

#[derive(Parser)]
#[command(name = "qm", version, about = "Quasimonotonicity and quasithreshold functionals of graphs and kernels")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Input file (graph or kernel); repeat for commands taking several
    #[arg(short, long, global = true)]
    input: Vec<PathBuf>,
    /// Output file, written atomically; stdout if absent
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every randomized step
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(flatten)]
    limits: LimitFlags,
    /// Fall back to heuristics instead of failing on size limits
    #[arg(long, global = true)]
    allow_heuristic: bool,
    /// Write zero runtimes so experiment output is byte-reproducible
    #[arg(long, global = true)]
    no_timing: bool,
    /// Also emit a gnuplot script (next to the output file, else stderr)
    #[arg(long, global = true)]
    gnuplot: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one functional, norm or distance
    Compute(compute::ComputeArgs),
    /// Run an inequality suite; exits 0 iff there are no violations
    Verify {
        /// Suite name, or `all`
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Run an experiment grid and write one CSV row per (size, seed, metric)
    Experiment {
        #[arg(value_parser = parse_kind)]
        kind: ExperimentKind,
        /// Comma-separated sizes (vertices, m, parts or trials by kind)
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Seeds per size
        #[arg(long)]
        seeds: Option<usize>,
        /// Subset strategy: exact or local_search (default: exact within the limit)
        #[arg(long)]
        subset: Option<String>,
        /// Parts of the additive kernel for `convergence`
        #[arg(long, default_value_t = 64)]
        parts: usize,
    },
    /// Sample a graph
    Sample {
        #[command(subcommand)]
        model: Model,
    },
    /// Convert between graph text/JSON, kernel grid/JSON, or a graph to its kernel
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        /// Vertex order for `--to kernel`, comma-separated (default: identity)
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum Model {
    /// Erdős–Rényi G(n, p)
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// W-random graph from the kernel given by `-i`, or the additive kernel
    Gnw {
        #[arg(long)]
        n: usize,
        /// Use the additive kernel on this many parts instead of `-i`
        #[arg(long)]
        additive: Option<usize>,
    },
    /// Uniformly random creation sequence
    Threshold {
        #[arg(long)]
        n: usize,
    },
    /// Balanced complete bipartite graph K_{m,m}
    Kmm {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Json,
    Text,
    Kernel,
}

fn parse_kind(s: &str) -> Result<ExperimentKind, String> {
    s.parse().map_err(|e: qm_core::Error| e.to_string())
}

impl Global {
    pub fn limits(&self) -> Result<Limits, Failure> {
        settings::resolve(&self.limits, std::env::var("QM_LIMITS").ok().as_deref())
    }

    pub fn seed(&self, what: &str) -> Result<Seed, Failure> {
        self.seed
            .map(Seed)
            .ok_or_else(|| Failure::usage(format!("{what} is randomized and needs --seed")))
    }

    pub fn single_input(&self) -> Result<String, Failure> {
        match &self.input[..] {
            [p] => read(p),
            [] => Err(Failure::usage("an input file is required (-i)")),
            _ => Err(Failure::usage("this command takes a single input file")),
        }
    }

    pub fn graph(&self) -> Result<Graph, Failure> {
        parse_graph(&self.single_input()?).map_err(Failure::from)
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn emit(&self, text: &str) -> Result<(), Failure> {
        emit(self.output.as_deref(), text)
    }
}

pub fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn parse_order(n: usize, at: &[usize]) -> Result<VertexOrder, Failure> {
    if at.len() != n {
        return Err(Failure::usage(format!("order has {} entries for {n} vertices", at.len())));
    }
    VertexOrder::new(at.to_vec()).map_err(Failure::from)
}

fn verify(global: &Global, suite: &str, trials: usize) -> Result<(), Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|s| s.0).collect()
    } else if is_known_suite(suite) {
        vec![suite]
    } else {
        let known: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
        return Err(Failure::unknown_suite(format!("unknown suite `{suite}`; known: {}", known.join(", "))));
    };
    let seed = global.seed("verify")?;
    let limits = global.limits()?;
    let results: Vec<SuiteResult> = names
        .iter()
        .map(|name| run_suite(name, trials, seed, &limits))
        .collect::<qm_core::Result<_>>()?;
    let text = match global.format_or(Format::Csv) {
        Format::Json => serde_json::to_string_pretty(&results).expect("serializable") + "\n",
        _ => {
            let mut out = format!("{SUITE_HEADER}\n");
            for r in &results {
                out.push_str(r.to_csv().split_once('\n').map_or("", |x| x.1));
            }
            out
        }
    };
    global.emit(&text)?;
    let mut violations = 0;
    for r in &results {
        eprintln!("{}: {} checks, {} violations", r.suite, r.rows.len(), r.violations());
        violations += r.violations();
    }
    if violations > 0 {
        return Err(Failure::violations(violations));
    }
    Ok(())
}

fn experiment(
    global: &Global,
    kind: ExperimentKind,
    sizes: Option<Vec<usize>>,
    seeds: Option<usize>,
    subset: Option<String>,
    parts: usize,
) -> Result<(), Failure> {
    let sizes = sizes.unwrap_or_else(|| match kind {
        ExperimentKind::Convergence => vec![8, 12, 16, 20],
        ExperimentKind::Quasirandom => vec![300],
        ExperimentKind::KmmTable => vec![1, 2, 3, 4],
        ExperimentKind::Tightness => vec![16, 32, 64],
        ExperimentKind::InequalitySuite => vec![100],
    });
    let seed = match kind {
        ExperimentKind::KmmTable => Seed(global.seed.unwrap_or(0)),
        _ => global.seed("experiment")?,
    };
    let seeds = seeds.unwrap_or(if kind == ExperimentKind::KmmTable { 1 } else { 10 });
    let mut spec = ExperimentSpec::new(kind, sizes, seeds, seed);
    spec.subset = subset
        .map(|s| s.parse::<SubsetStrategy>())
        .transpose()?;
    spec.kernel_parts = parts;
    spec.timing = !global.no_timing;
    let limits = global.limits()?;
    let rows = match run_experiment(&spec, &limits) {
        Err(qm_core::Error::SizeLimit { .. }) if global.allow_heuristic => {
            spec.subset = None;
            run_experiment(&spec, &limits)?
        }
        r => r?,
    };
    let text = match global.format_or(Format::Csv) {
        Format::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
        _ => rows_to_csv(&rows),
    };
    global.emit(&text)?;
    if global.gnuplot {
        match &global.output {
            Some(path) => {
                let script = gnuplot_script(&path.display().to_string(), &rows);
                let mut gp = path.clone().into_os_string();
                gp.push(".gp");
                emit(Some(PathBuf::from(gp).as_path()), &script)?;
            }
            None => eprint!("{}", gnuplot_script("experiment.csv", &rows)),
        }
    }
    Ok(())
}

fn graph_out(global: &Global, g: &Graph) -> String {
    match global.format_or(Format::Text) {
        Format::Json => graph_to_json(g) + "\n",
        _ => graph_to_text(g),
    }
}

fn sample(global: &Global, model: Model) -> Result<(), Failure> {
    let g = match model {
        Model::Gnp { n, p } => gnp(n, p, global.seed("sample gnp")?)?,
        Model::Gnw { n, additive } => {
            let w = match additive {
                Some(k) if k >= 1 => additive_kernel(k),
                Some(_) => return Err(Failure::usage("--additive needs at least one part")),
                None => parse_kernel(&global.single_input()?)?,
            };
            gnw(n, &w, global.seed("sample gnw")?)
        }
        Model::Threshold { n } => random_threshold(n, global.seed("sample threshold")?),
        Model::Kmm { m } => {
            if m == 0 {
                return Err(Failure::usage("m must be at least 1"));
            }
            kmm_graph(m)
        }
    };
    global.emit(&graph_out(global, &g))
}

fn convert(global: &Global, to: Target, at: Option<Vec<usize>>) -> Result<(), Failure> {
    let text = global.single_input()?;
    let graph = parse_graph(&text);
    let out = match (graph, to) {
        (Ok(g), Target::Json) => graph_to_json(&g) + "\n",
        (Ok(g), Target::Text) => graph_to_text(&g),
        (Ok(g), Target::Kernel) => {
            let order = match at {
                Some(at) => parse_order(g.n(), &at)?,
                None => VertexOrder::identity(g.n()),
            };
            let w = kernel_from_graph(&g, &order);
            kernel_to_text(&w)?
        }
        (Err(graph_err), _) => {
            let w = parse_kernel(&text).map_err(|kernel_err| {
                Failure::input(format!("not a graph ({graph_err}) nor a kernel ({kernel_err})"))
            })?;
            match to {
                Target::Json => kernel_to_json(&w) + "\n",
                Target::Text => kernel_to_text(&w)?,
                Target::Kernel => return Err(Failure::usage("input is already a kernel")),
            }
        }
    };
    global.emit(&out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let global = cli.global;
    if let Some(t) = global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    match cli.command {
        Command::Compute(args) => compute::run(&global, args),
        Command::Verify { suite, trials } => verify(&global, &suite, trials),
        Command::Experiment { kind, sizes, seeds, subset, parts } => {
            experiment(&global, kind, sizes, seeds, subset, parts)
        }
        Command::Sample { model } => sample(&global, model),
        Command::Convert { to, at } => convert(&global, to, at),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qm: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
