//! Argument parsing and dispatch for the `giantcomp` binary.
//!
//! Exit codes: 0 on success (including negative answers such as
//! `infeasible`), 1 for invalid input or usage, 2 for internal failures.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use giantcomp::cyclestats::report_csv;
use giantcomp::degseq::{DegreeSequence, DEFAULT_DELTA, DEFAULT_EPS, DEFAULT_LAMBDA};
use giantcomp::experiments::{run_experiment, ExperimentSpec};
use giantcomp::explore::{explore_seeded, priming_set, ExploreOptions, DEFAULT_OMEGA};
use giantcomp::graph::SimpleGraph;
use giantcomp::graphgen::{sample, Method, SamplerConfig};
use giantcomp::kernel::build_kernel;
use giantcomp::powerlaw::{acl_sequence_with_budget, beta0, AclParams, DEFAULT_VERTEX_BUDGET};
use giantcomp::rng::stream_rng;
use giantcomp::Error;

#[derive(Debug, Parser)]
#[command(name = "giantcomp", version, about = "Giant components of random graphs with given degrees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the invariants of a degree file as JSON.
    Invariants {
        /// Degree file in list or count form.
        file: PathBuf,
        /// Well-behaved threshold on M.
        #[arg(long, default_value_t = DEFAULT_LAMBDA)]
        lambda: u64,
    },
    /// Print `feasible` or `infeasible`.
    Feasible {
        /// Degree file in list or count form.
        file: PathBuf,
    },
    /// Print the giant-component verdict.
    Classify {
        /// Degree file in list or count form.
        file: PathBuf,
        /// Lower cut on R/M for a giant.
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        /// Upper cut on R/M for no giant.
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        /// Well-behaved threshold on M.
        #[arg(long, default_value_t = DEFAULT_LAMBDA)]
        lambda: u64,
        /// Print the full classification as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Sample a uniform simple graph and write it as an edge list.
    Sample {
        /// Degree file in list or count form.
        file: PathBuf,
        /// Sampler: config, mcmc or auto.
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Switch proposals for mcmc; defaults to 50 m ln m.
        #[arg(long)]
        burn_in: Option<u64>,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the kernel multigraph of an edge-list graph and write it as JSON.
    Kernel {
        /// Edge-list file.
        graph: PathBuf,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exploration process on the kernel of an edge-list graph.
    Explore(ExploreArgs),
    /// Print C_t, the cycle-length distribution and long-cycle tails as CSV.
    Cyclestats {
        /// Number of vertices.
        #[arg(long)]
        t: usize,
    },
    /// Write a power-law degree file, or compute the threshold exponent.
    Powerlaw(PowerlawArgs),
    /// Run a Monte Carlo experiment from a JSON spec.
    Experiment {
        /// JSON spec file.
        spec: PathBuf,
        /// Overrides the spec's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output CSV file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the report as JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    /// Edge-list file.
    pub graph: PathBuf,
    /// Starting set: `prime` or comma-separated 1-indexed vertices.
    #[arg(long, default_value = "prime")]
    pub s0: String,
    /// Priming-set parameter.
    #[arg(long, default_value_t = DEFAULT_OMEGA)]
    pub omega: f64,
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of steps.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Stop as soon as no boundary edge remains.
    #[arg(long)]
    pub stop_at_zero: bool,
    /// Trace CSV file; standard output if absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Print the trace as JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct PowerlawArgs {
    #[command(subcommand)]
    pub command: Option<PowerlawCommand>,
    /// Log-scale parameter.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Exponent.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Largest number of vertices allowed.
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    pub vertex_budget: u64,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PowerlawCommand {
    /// Print the root of zeta(b - 2) = 2 zeta(b - 1).
    Beta0 {
        /// Bracket width at which bisection stops.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ConvergenceFailure { .. } | Error::RejectionBudgetExceeded { .. } | Error::InconsistentPaths(_) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_sequence(path: &Path) -> std::result::Result<DegreeSequence, Failure> {
    Ok(DegreeSequence::parse(&read(path)?)?)
}

fn read_graph(path: &Path) -> std::result::Result<SimpleGraph, Failure> {
    Ok(SimpleGraph::parse_edge_list(&read(path)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Internal(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(format!("cannot write to standard output: {e}"))),
    }
}

fn line(text: impl std::fmt::Display) -> String {
    format!("{text}\n")
}

fn json<T: serde::Serialize>(value: &T) -> std::result::Result<String, Failure> {
    serde_json::to_string_pretty(value).map(line).map_err(|e| Failure::Internal(e.to_string()))
}

fn parse_s0(spec: &str) -> std::result::Result<Vec<u32>, Failure> {
    spec.split(',')
        .map(|s| match s.trim().parse::<u32>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Failure::Input(format!("--s0 expects `prime` or 1-indexed vertices, found {s:?}"))),
        })
        .collect()
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Invariants { file, lambda } => {
            let d = read_sequence(&file)?;
            emit(None, &line(d.invariants(lambda).to_json()))
        }
        Command::Feasible { file } => {
            let d = read_sequence(&file)?;
            emit(None, &line(if d.is_feasible() { "feasible" } else { "infeasible" }))
        }
        Command::Classify { file, eps, delta, lambda, json: as_json } => {
            let c = read_sequence(&file)?.classify(eps, delta, lambda)?;
            emit(None, &if as_json { json(&c)? } else { line(c.verdict) })
        }
        Command::Sample { file, method, seed, burn_in, out } => {
            let d = read_sequence(&file)?;
            let cfg = SamplerConfig { burn_in, ..SamplerConfig::default() };
            let g = sample(&d, method, &cfg, &mut stream_rng(seed, 0))?;
            emit(out.as_deref(), &g.to_edge_list())
        }
        Command::Kernel { graph, out } => {
            let h = build_kernel(&read_graph(&graph)?)?;
            emit(out.as_deref(), &line(h.to_json()))
        }
        Command::Explore(a) => {
            let h = build_kernel(&read_graph(&a.graph)?)?;
            let s0 = if a.s0 == "prime" { priming_set(&h, a.omega) } else { parse_s0(&a.s0)? };
            let opts = ExploreOptions { budget: a.budget, stop_at_zero: a.stop_at_zero };
            let trace = explore_seeded(&h, &s0, a.seed, opts)?;
            emit(a.csv.as_deref(), &if a.json { json(&trace)? } else { trace.to_csv() })
        }
        Command::Cyclestats { t } => emit(None, &report_csv(t)?),
        Command::Powerlaw(a) => match a.command {
            Some(PowerlawCommand::Beta0 { tol }) => emit(None, &line(beta0(tol)?)),
            None => {
                let (Some(alpha), Some(beta)) = (a.alpha, a.beta) else {
                    return Err(Failure::Input("powerlaw needs --alpha and --beta, or the beta0 subcommand".into()));
                };
                let s = acl_sequence_with_budget(AclParams::new(alpha, beta)?, a.vertex_budget)?;
                if s.parity_fixed {
                    eprintln!("note: appended one degree-1 vertex to make the degree sum even");
                }
                emit(a.out.as_deref(), &s.sequence.to_counts_text())
            }
        },
        Command::Experiment { spec, seed, out, json: as_json } => {
            let mut spec = ExperimentSpec::from_json(&read(&spec)?)?;
            if let Some(seed) = seed {
                spec.master_seed = seed;
            }
            let report = run_experiment(&spec)?;
            emit(out.as_deref(), &if as_json { json(&report)? } else { report.to_csv() })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            2
        }
    }
}
