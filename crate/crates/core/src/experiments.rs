//! Monte Carlo harness: sample many graphs for one degree sequence and
//! report component statistics of each sample and of its kernel.
//!
//! Trials run in parallel. Trial `i` draws from stream `i` of the master
//! seed, so a report depends only on its spec.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclestats::{longest_cycle_tail, sample_2regular, CycleCountTable};
use crate::degseq::{DegreeSequence, InvariantReport, Verdict, DEFAULT_DELTA, DEFAULT_EPS, DEFAULT_LAMBDA};
use crate::error::{Error, Result};
use crate::graphgen::{sample, Method, SamplerConfig};
use crate::kernel::{build_kernel, kernel_component_stats};
use crate::powerlaw::{acl_sequence, AclParams};
use crate::rng::stream_rng;

/// Family of degree sequences a spec samples from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    /// Explicit `degree -> multiplicity` map.
    Counts {
        #[serde(deserialize_with = "degree_keyed")]
        counts: BTreeMap<u32, u64>,
    },
    /// A degree file in list or count form.
    File { path: PathBuf },
    /// `floor(fraction * n)` vertices of each degree.
    Mixture {
        n: u64,
        #[serde(deserialize_with = "degree_keyed")]
        fractions: BTreeMap<u32, f64>,
    },
    /// Every vertex of degree `degree`.
    Regular { n: u64, degree: u32 },
    /// Aiello-Chung-Lu power law.
    PowerLaw { alpha: f64, beta: f64 },
    /// One vertex of degree `2k` and `k^2 - 1` of degree 1, for odd `k`.
    Star { k: u64 },
}

// Tagged enums buffer their content, which loses the string-to-integer key
// coercion that JSON object keys need.
fn degree_keyed<'de, D, V>(de: D) -> std::result::Result<BTreeMap<u32, V>, D::Error>
where
    D: serde::Deserializer<'de>,
    V: Deserialize<'de>,
{
    BTreeMap::<String, V>::deserialize(de)?
        .into_iter()
        .map(|(k, v)| k.trim().parse().map(|d| (d, v)).map_err(|_| serde::de::Error::custom(format!("bad degree key {k:?}"))))
        .collect()
}

impl Scenario {
    pub fn sequence(&self) -> Result<DegreeSequence> {
        let d = match self {
            Scenario::Counts { counts } => DegreeSequence::from_counts(counts.iter().map(|(&d, &c)| (d, c)))?,
            Scenario::File { path } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InfeasibleScenario(format!("cannot read {}: {e}", path.display())))?;
                DegreeSequence::parse(&text)?
            }
            Scenario::Mixture { n, fractions } => {
                if fractions.values().any(|f| !(0.0..=1.0).contains(f)) {
                    return Err(Error::InfeasibleScenario("mixture fractions must lie in [0, 1]".into()));
                }
                DegreeSequence::from_counts(fractions.iter().map(|(&d, &f)| (d, (f * *n as f64 + 1e-9).floor() as u64)))?
            }
            Scenario::Regular { n, degree } => DegreeSequence::from_counts([(*degree, *n)])?,
            Scenario::PowerLaw { alpha, beta } => acl_sequence(AclParams::new(*alpha, *beta)?)?.sequence,
            Scenario::Star { k } => {
                if k % 2 == 0 {
                    return Err(Error::InfeasibleScenario(format!("star family needs odd k, got {k}")));
                }
                DegreeSequence::from_counts([(1, k * k - 1), ((2 * k) as u32, 1)])?
            }
        };
        if d.n() == 0 || !d.is_feasible() {
            return Err(Error::InfeasibleScenario(format!("scenario {self:?} gives an infeasible sequence")));
        }
        Ok(d)
    }
}

fn default_trials() -> u64 {
    100
}

fn default_rho() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub scenario: Scenario,
    #[serde(default = "default_trials")]
    pub trials: u64,
    /// A trial counts as giant if its largest component has `>= gamma n`
    /// vertices.
    pub gamma: f64,
    #[serde(default)]
    pub sampler: Method,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub burn_in: Option<u64>,
    /// Kernel side of the coupling check: a trial's kernel is giant if its
    /// largest component carries `>= rho gamma M` of the kernel degree mass.
    #[serde(default = "default_rho")]
    pub rho: f64,
}

impl ExperimentSpec {
    pub fn new(scenario: Scenario, trials: u64, gamma: f64, master_seed: u64) -> Self {
        Self { scenario, trials, gamma, sampler: Method::Auto, master_seed, burn_in: None, rho: default_rho() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Validation("trials must be at least 1".into()));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::Validation(format!("gamma must lie in (0, 1), got {}", self.gamma)));
        }
        if self.rho.is_nan() || self.rho <= 0.0 {
            return Err(Error::Validation(format!("rho must be positive, got {}", self.rho)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: u64,
    pub largest_order: usize,
    pub largest_fraction: f64,
    /// Degree mass of the largest kernel component.
    pub largest_kernel_mass: u64,
    /// `largest_kernel_mass / M`, or 0 for an empty kernel.
    pub kernel_fraction: f64,
    /// Vertices on cyclic components.
    pub cyclic_vertices: usize,
    pub giant: bool,
    pub kernel_giant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub trials: u64,
    pub successes: u64,
    pub probability: f64,
    pub mean_largest_fraction: f64,
    pub mean_kernel_fraction: f64,
    pub mean_cyclic_vertices: f64,
    /// Trials where exactly one of `giant` and `kernel_giant` holds.
    pub coupling_mismatches: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub invariants: InvariantReport,
    pub n: u64,
    pub trials: Vec<TrialResult>,
    pub aggregate: Aggregate,
}

impl ExperimentReport {
    /// One row per trial and a trailing `#aggregate` row of `key=value`
    /// fields. Floats use fixed precision so equal reports print equal bytes.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("trial,largest_order,largest_fraction,largest_kernel_mass,kernel_fraction,cyclic_vertices,giant,kernel_giant\n");
        for t in &self.trials {
            writeln!(
                out,
                "{},{},{:.6},{},{:.6},{},{},{}",
                t.trial,
                t.largest_order,
                t.largest_fraction,
                t.largest_kernel_mass,
                t.kernel_fraction,
                t.cyclic_vertices,
                u8::from(t.giant),
                u8::from(t.kernel_giant)
            )
            .unwrap();
        }
        let a = &self.aggregate;
        let inv = &self.invariants;
        writeln!(
            out,
            "#aggregate,trials={},successes={},probability={:.6},mean_largest_fraction={:.6},mean_kernel_fraction={:.6},\
             mean_cyclic_vertices={:.6},coupling_mismatches={},n={},M={},R={},jD={},ratio_hat={:.6}",
            a.trials,
            a.successes,
            a.probability,
            a.mean_largest_fraction,
            a.mean_kernel_fraction,
            a.mean_cyclic_vertices,
            a.coupling_mismatches,
            self.n,
            inv.m,
            inv.r,
            inv.j_d,
            inv.ratio_hat_f64()
        )
        .unwrap();
        out
    }
}

/// Runs every trial of `spec`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let d = spec.scenario.sequence()?;
    run_on_sequence(&d, spec, 0)
}

fn run_on_sequence(d: &DegreeSequence, spec: &ExperimentSpec, stream_base: u64) -> Result<ExperimentReport> {
    let n = d.n();
    let invariants = d.invariants(DEFAULT_LAMBDA);
    let cfg = SamplerConfig { burn_in: spec.burn_in, ..SamplerConfig::default() };
    let threshold = spec.gamma * n as f64;
    let m = invariants.m;
    let trials = (0..spec.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(spec.master_seed, stream_base + i);
            let g = sample(d, spec.sampler, &cfg, &mut rng)?;
            let largest_order = g.largest_component_order();
            let h = build_kernel(&g)?;
            let ks = kernel_component_stats(&h);
            let largest_kernel_mass = 2 * ks.components.iter().map(|c| c.size as u64).max().unwrap_or(0);
            let kernel_fraction = if m > 0 { largest_kernel_mass as f64 / m as f64 } else { 0.0 };
            let giant = largest_order as f64 >= threshold;
            let kernel_giant = m > 0 && largest_kernel_mass as f64 >= spec.rho * spec.gamma * m as f64;
            Ok(TrialResult {
                trial: i,
                largest_order,
                largest_fraction: largest_order as f64 / n as f64,
                largest_kernel_mass,
                kernel_fraction,
                cyclic_vertices: h.deleted_cycles().iter().map(Vec::len).sum(),
                giant,
                kernel_giant,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let count = trials.len() as f64;
    let successes = trials.iter().filter(|t| t.giant).count() as u64;
    let aggregate = Aggregate {
        trials: spec.trials,
        successes,
        probability: successes as f64 / count,
        mean_largest_fraction: trials.iter().map(|t| t.largest_fraction).sum::<f64>() / count,
        mean_kernel_fraction: trials.iter().map(|t| t.kernel_fraction).sum::<f64>() / count,
        mean_cyclic_vertices: trials.iter().map(|t| t.cyclic_vertices as f64).sum::<f64>() / count,
        coupling_mismatches: trials.iter().filter(|t| t.giant != t.kernel_giant).count() as u64,
    };
    Ok(ExperimentReport { invariants, n, trials, aggregate })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct All2Report {
    pub n: usize,
    /// Cycle-length threshold `ceil(gamma n)`.
    pub threshold: usize,
    pub trials: u64,
    pub successes: u64,
    pub empirical: f64,
    pub exact: f64,
    /// Standard error of the empirical frequency under the exact value.
    pub standard_error: f64,
}

impl All2Report {
    /// `|empirical - exact|` in standard errors.
    pub fn z_score(&self) -> f64 {
        if self.standard_error == 0.0 {
            return if self.empirical == self.exact { 0.0 } else { f64::INFINITY };
        }
        (self.empirical - self.exact).abs() / self.standard_error
    }
}

/// Samples uniform 2-regular graphs on `n` vertices and compares the
/// frequency of a cycle of length `>= ceil(gamma n)` with its exact value.
pub fn run_all2_experiment(n: usize, gamma: f64, trials: u64, seed: u64) -> Result<All2Report> {
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    if !(gamma > 0.0 && gamma <= 1.0) || trials == 0 {
        return Err(Error::Domain(format!("need 0 < gamma <= 1 and trials >= 1, got gamma={gamma}, trials={trials}")));
    }
    let threshold = ((gamma * n as f64 - 1e-9).ceil() as usize).max(3);
    let table = CycleCountTable::new(n);
    let exact = longest_cycle_tail(n, threshold, &table)?;
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| {
            let cycles = sample_2regular(n, &table, &mut stream_rng(seed, i))?;
            Ok(u64::from(cycles.iter().any(|c| c.len() >= threshold)))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum::<u64>();
    Ok(All2Report {
        n,
        threshold,
        trials,
        successes,
        empirical: successes as f64 / trials as f64,
        exact,
        standard_error: (exact * (1.0 - exact) / trials as f64).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub gamma: f64,
    pub trials: u64,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub sampler: Method,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub invariants: InvariantReport,
    pub verdict: Verdict,
    pub probability: f64,
}

/// Runs one experiment per `(alpha, beta)` cell. Cell `c` uses streams
/// starting at `c << 32`.
pub fn run_powerlaw_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    let mut cell = 0u64;
    for &alpha in &spec.alphas {
        for &beta in &spec.betas {
            let d = acl_sequence(AclParams::new(alpha, beta)?)?.sequence;
            let verdict = d.classify(spec.eps, spec.delta, DEFAULT_LAMBDA)?.verdict;
            let exp = ExperimentSpec {
                scenario: Scenario::PowerLaw { alpha, beta },
                trials: spec.trials,
                gamma: spec.gamma,
                sampler: spec.sampler,
                master_seed: spec.master_seed,
                burn_in: None,
                rho: default_rho(),
            };
            exp.validate()?;
            let report = run_on_sequence(&d, &exp, cell << 32)?;
            rows.push(SweepRow { alpha, beta, invariants: report.invariants, verdict, probability: report.aggregate.probability });
            cell += 1;
        }
    }
    Ok(rows)
}

/// CSV with one row per sweep cell.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("alpha,beta,n,M,R,jD,ratio_hat,verdict,probability\n");
    for r in rows {
        let inv = &r.invariants;
        writeln!(
            out,
            "{:.6},{:.6},{},{},{},{},{:.6},{},{:.6}",
            r.alpha,
            r.beta,
            inv.n,
            inv.m,
            inv.r,
            inv.j_d,
            inv.ratio_hat_f64(),
            r.verdict,
            r.probability
        )
        .unwrap();
    }
    out
}
