//! Benchmark specifications and the batch runner.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use mmp_core::problems::{
    dinkelbach_gee_detailed, gee_problem, generate_aloha, generate_channels, global_energy_efficiency,
    aloha_problem, wsr_problem, EnergyModel, Representation, DEFAULT_LAMBDA_TOL,
};
use mmp_core::{solve, SelectionRule, SolverConfig, SolverResult, ToleranceMode, TraceRow};
use rayon::prelude::*;

use crate::error::{BenchError, Result};
use crate::instance::{InstanceDoc, ProblemKind};
use crate::output::ResultRow;

/// Amplifier inefficiency used by the `gee-compare` experiment.
pub const GEE_PHI: f64 = 5.0;
/// Circuit power used by the `gee-compare` experiment.
pub const GEE_PC: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    WsrCompare,
    GeeCompare,
    Aloha,
    SingleSolve,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::WsrCompare => "wsr-compare",
            Self::GeeCompare => "gee-compare",
            Self::Aloha => "aloha",
            Self::SingleSolve => "single-solve",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "wsr-compare" => Ok(Self::WsrCompare),
            "gee-compare" => Ok(Self::GeeCompare),
            "aloha" => Ok(Self::Aloha),
            "single-solve" => Ok(Self::SingleSolve),
            other => Err(format!("unknown experiment `{other}`")),
        }
    }
}

/// A batch of solver runs: every realization is solved under every
/// combination of representation, selection rule and reduction flag.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub experiment: Experiment,
    pub k: usize,
    pub realizations: usize,
    pub eta: f64,
    pub relative: bool,
    pub selections: Vec<SelectionRule>,
    pub reductions: Vec<bool>,
    pub representations: Vec<Representation>,
    pub seed: u64,
    pub max_iterations: Option<u64>,
    pub timeout: Option<Duration>,
    /// Instance file for `single-solve`.
    pub instance: Option<PathBuf>,
    pub trace: bool,
}

impl BenchSpec {
    pub fn new(experiment: Experiment, k: usize, realizations: usize) -> Self {
        Self {
            experiment,
            k,
            realizations,
            eta: 0.01,
            relative: false,
            selections: vec![SelectionRule::BestFirst],
            reductions: vec![false],
            representations: vec![Representation::Mmp],
            seed: 0,
            max_iterations: None,
            timeout: None,
            instance: None,
            trace: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(BenchError::Spec(m.to_string()));
        if self.realizations == 0 {
            return bad("realizations must be at least 1");
        }
        if self.k == 0 && self.experiment != Experiment::SingleSolve {
            return bad("K must be at least 1");
        }
        if !(self.eta > 0.0) || !self.eta.is_finite() {
            return bad("eta must be positive");
        }
        if self.selections.is_empty() || self.reductions.is_empty() || self.representations.is_empty() {
            return bad("selection, reduction and representation lists must not be empty");
        }
        if self.experiment == Experiment::SingleSolve && self.instance.is_none() {
            return bad("single-solve needs an instance file");
        }
        if self.timeout.is_some_and(|t| t.is_zero()) {
            return bad("timeout must be positive");
        }
        Ok(())
    }

    fn solver_config(&self, selection: SelectionRule, reduction: bool, seed: u64) -> SolverConfig {
        SolverConfig {
            eta: self.eta,
            tolerance_mode: if self.relative {
                ToleranceMode::Relative
            } else {
                ToleranceMode::Absolute
            },
            selection_rule: selection,
            reduction_enabled: reduction,
            max_iterations: self.max_iterations,
            max_wall_time: self.timeout,
            rng_seed: seed,
            trace: self.trace,
            ..SolverConfig::default()
        }
    }

    /// Selection and reduction combinations, in output order.
    fn configurations(&self) -> Vec<(SelectionRule, bool)> {
        let mut out = Vec::new();
        for &s in &self.selections {
            for &r in &self.reductions {
                out.push((s, r));
            }
        }
        out
    }
}

/// A finished row and the iteration trace of its run, if requested.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub row: ResultRow,
    pub trace: Vec<TraceRow>,
}

struct RowTemplate<'a> {
    instance_id: &'a str,
    algorithm: &'static str,
    representation: &'static str,
    selection: SelectionRule,
    reduction: bool,
    seed: u64,
}

impl RowTemplate<'_> {
    fn finish(&self, outcome: mmp_core::Result<SolverResult>) -> RunRecord {
        let mut row = ResultRow {
            instance_id: self.instance_id.to_string(),
            algorithm: self.algorithm.to_string(),
            representation: self.representation.to_string(),
            selection: self.selection.as_str().to_string(),
            reduction: if self.reduction { "on" } else { "off" }.to_string(),
            status: "error".to_string(),
            objective: f64::NAN,
            iterations: 0,
            peak_regions: 0,
            wall_time_s: 0.0,
            seed: self.seed,
            error: None,
        };
        match outcome {
            Ok(res) => {
                row.status = res.status.as_str().to_string();
                row.objective = res.value;
                row.iterations = res.iterations;
                row.peak_regions = res.peak_region_count as u64;
                row.wall_time_s = res.wall_time;
                RunRecord { row, trace: res.trace }
            }
            Err(e) => {
                row.error = Some(e.to_string());
                RunRecord { row, trace: Vec::new() }
            }
        }
    }
}

fn instance_label(spec: &BenchSpec, index: usize) -> String {
    let prefix = match spec.experiment {
        Experiment::WsrCompare => "wsr",
        Experiment::GeeCompare => "gee",
        Experiment::Aloha => "aloha",
        Experiment::SingleSolve => "file",
    };
    format!("{prefix}-K{}-r{index}", spec.k)
}

fn run_realization(spec: &BenchSpec, index: usize, doc: Option<&InstanceDoc>) -> Vec<RunRecord> {
    let seed = spec.seed.wrapping_add(index as u64);
    let id = match (spec.experiment, &spec.instance) {
        (Experiment::SingleSolve, Some(path)) => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| instance_label(spec, index)),
        _ => instance_label(spec, index),
    };
    let mut out = Vec::new();
    for (selection, reduction) in spec.configurations() {
        let config = spec.solver_config(selection, reduction, seed);
        let template = |algorithm, representation: &'static str| RowTemplate {
            instance_id: &id,
            algorithm,
            representation,
            selection,
            reduction,
            seed,
        };
        match spec.experiment {
            Experiment::WsrCompare => {
                for &repr in &spec.representations {
                    let outcome = generate_channels(spec.k, seed)
                        .and_then(|net| wsr_problem(&net, repr))
                        .and_then(|p| solve(&p, &config));
                    out.push(template("brb", repr.as_str()).finish(outcome));
                }
            }
            Experiment::GeeCompare => {
                let energy = EnergyModel::new(vec![GEE_PHI; spec.k], GEE_PC, 1.0);
                let net = generate_channels(spec.k, seed);
                let direct = net
                    .clone()
                    .and_then(|net| gee_problem(&net, &energy))
                    .and_then(|p| solve(&p, &config));
                out.push(template("brb", Representation::Mmp.as_str()).finish(direct));
                let dinkelbach = net.and_then(|net| {
                    let run = dinkelbach_gee_detailed(&net, &energy, &config, DEFAULT_LAMBDA_TOL)?;
                    let mut res = run.result;
                    if let Some(p) = &res.incumbent {
                        res.value = global_energy_efficiency(&net, &energy, p);
                    }
                    Ok(res)
                });
                out.push(template("dinkelbach", Representation::Dm.as_str()).finish(dinkelbach));
            }
            Experiment::Aloha => {
                let outcome = generate_aloha(spec.k, seed)
                    .and_then(|net| aloha_problem(&net))
                    .and_then(|p| solve(&p, &config));
                out.push(template("brb", Representation::Mmp.as_str()).finish(outcome));
            }
            Experiment::SingleSolve => {
                let doc = doc.expect("single-solve document loaded");
                let reprs: &[Representation] = if doc.kind() == ProblemKind::Wsr {
                    &spec.representations
                } else {
                    &[Representation::Mmp]
                };
                for &repr in reprs {
                    let outcome = doc
                        .build(repr)
                        .map_err(|e| mmp_core::MmpError::InvalidProblem(e.to_string()))
                        .and_then(|p| solve(&p, &config));
                    out.push(template("brb", repr.as_str()).finish(outcome));
                }
            }
        }
    }
    out
}

/// Runs the batch and returns each row with its trace. Realizations run in
/// parallel; output order is realization order, then configuration order.
pub fn run_bench_traced(spec: &BenchSpec) -> Result<Vec<RunRecord>> {
    spec.validate()?;
    let doc = match (&spec.experiment, &spec.instance) {
        (Experiment::SingleSolve, Some(path)) => Some(InstanceDoc::read(path)?),
        _ => None,
    };
    let count = if spec.experiment == Experiment::SingleSolve { 1 } else { spec.realizations };
    let batches: Vec<Vec<RunRecord>> = (0..count)
        .into_par_iter()
        .map(|i| run_realization(spec, i, doc.as_ref()))
        .collect();
    Ok(batches.into_iter().flatten().collect())
}

/// Runs the batch. Failures of individual runs become rows with status
/// `error`; only an invalid spec or unreadable instance file is an error.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<ResultRow>> {
    Ok(run_bench_traced(spec)?.into_iter().map(|r| r.row).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_realizations_rejected() {
        let spec = BenchSpec::new(Experiment::WsrCompare, 2, 0);
        assert!(matches!(run_bench(&spec), Err(BenchError::Spec(_))));
    }

    #[test]
    fn single_solve_needs_instance() {
        let spec = BenchSpec::new(Experiment::SingleSolve, 1, 1);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn one_row_per_configuration() {
        let mut spec = BenchSpec::new(Experiment::WsrCompare, 2, 3);
        spec.representations = vec![Representation::Mmp, Representation::Dm];
        spec.reductions = vec![false, true];
        let rows = run_bench(&spec).unwrap();
        assert_eq!(rows.len(), 3 * 2 * 2);
        assert_eq!(rows[0].instance_id, "wsr-K2-r0");
        assert_eq!(rows[11].instance_id, "wsr-K2-r2");
        assert!(rows.iter().all(|r| r.status == "eta-optimal"));
        assert_eq!(rows[1].seed, 0);
        assert_eq!(rows[4].seed, 1);
    }

    #[test]
    fn limits_become_statuses() {
        let mut spec = BenchSpec::new(Experiment::WsrCompare, 3, 1);
        spec.max_iterations = Some(2);
        spec.eta = 1e-9;
        let rows = run_bench(&spec).unwrap();
        assert_eq!(rows[0].status, "iteration-limit");
        assert_eq!(rows[0].iterations, 2);
    }

    #[test]
    fn gee_compare_rows() {
        let rows = run_bench(&BenchSpec::new(Experiment::GeeCompare, 2, 1)).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].algorithm, "brb");
        assert_eq!(rows[1].algorithm, "dinkelbach");
        assert!((rows[0].objective - rows[1].objective).abs() <= 0.02);
    }

    #[test]
    fn failing_runs_become_error_rows() {
        let mut spec = BenchSpec::new(Experiment::GeeCompare, 2, 1);
        spec.max_iterations = Some(1);
        spec.eta = 1e-9;
        let rows = run_bench(&spec).unwrap();
        assert_eq!(rows[0].status, "iteration-limit");
        assert!(rows[1].is_error());
        assert!(rows[1].error.as_deref().unwrap().contains("inner solve failed"));
    }
}
