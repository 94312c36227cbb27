//! The branch-reduce-and-bound loop.
//!
//! Each iteration selects a box, bisects it along a longest side, optionally
//! reduces both children, updates the incumbent from the children and prunes
//! children that are infeasible or cannot beat the incumbent by more than the
//! tolerance. The run ends when no box is left whose bound exceeds that
//! threshold, or when an iteration or time limit trips.

mod incumbent;
mod queue;
mod reduce;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boxes::BoxNd;
use crate::error::{MmpError, Result};
use crate::feasibility::CornerValues;
use crate::function::{sample_between, MmFunction};
use crate::problem::ProblemInstance;

pub use incumbent::find_incumbent;
pub use queue::{QueueEntry, RegionQueue};
pub use reduce::reduce;

use incumbent::assess;

/// Boxes narrower than this are not split further.
const MIN_DIAMETER: f64 = 1e-12;
/// Oldest-first scans the whole queue for the termination test this often.
const OLDEST_FIRST_SCAN_PERIOD: u64 = 64;
const AUDIT_SAMPLES: usize = 1000;

/// How `eta` enters the pruning threshold: `gamma + eta` or `(1 + eta)·gamma`.
/// The relative form assumes positive objective values; for `gamma ≤ 0` it
/// prunes no more than an exact search would.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceMode {
    Absolute,
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    BestFirst,
    OldestFirst,
}

impl SelectionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::BestFirst => "best",
            Self::OldestFirst => "oldest",
        }
    }
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectionRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "best" | "best-first" => Ok(Self::BestFirst),
            "oldest" | "oldest-first" => Ok(Self::OldestFirst),
            other => Err(format!("unknown selection rule `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub eta: f64,
    pub tolerance_mode: ToleranceMode,
    pub selection_rule: SelectionRule,
    pub reduction_enabled: bool,
    pub reduction_bisection_steps: u32,
    /// Constraint slack for incumbents; 0 disables approximate mode.
    pub epsilon_feasibility: f64,
    pub max_iterations: Option<u64>,
    pub max_wall_time: Option<Duration>,
    /// Seed for the sampling done by `audit_pruning`.
    pub rng_seed: u64,
    /// Record one [`TraceRow`] per iteration.
    pub trace: bool,
    /// Sample every box pruned by its bound and count feasible points that
    /// beat the pruning threshold. Slow; for debugging only.
    pub audit_pruning: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            eta: 0.01,
            tolerance_mode: ToleranceMode::Absolute,
            selection_rule: SelectionRule::BestFirst,
            reduction_enabled: false,
            reduction_bisection_steps: 10,
            epsilon_feasibility: 0.0,
            max_iterations: None,
            max_wall_time: None,
            rng_seed: 0,
            trace: false,
            audit_pruning: false,
        }
    }
}

impl SolverConfig {
    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0) || !self.eta.is_finite() {
            return Err(MmpError::InvalidConfig(format!("eta must be positive, got {}", self.eta)));
        }
        if self.reduction_bisection_steps == 0 {
            return Err(MmpError::InvalidConfig(
                "reduction_bisection_steps must be at least 1".into(),
            ));
        }
        if !(self.epsilon_feasibility >= 0.0) {
            return Err(MmpError::InvalidConfig(format!(
                "epsilon_feasibility must be nonnegative, got {}",
                self.epsilon_feasibility
            )));
        }
        Ok(())
    }

    /// Bound at or below which a box is discarded, given incumbent value `gamma`.
    pub fn prune_threshold(&self, gamma: f64) -> f64 {
        match self.tolerance_mode {
            ToleranceMode::Absolute => gamma + self.eta,
            ToleranceMode::Relative => (1.0 + self.eta) * gamma,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    EtaOptimal,
    RelativeEtaOptimal,
    EpsEtaApproximate,
    Infeasible,
    IterationLimit,
    TimeLimit,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::EtaOptimal => "eta-optimal",
            Self::RelativeEtaOptimal => "relative-eta-optimal",
            Self::EpsEtaApproximate => "eps-eta-approximate",
            Self::Infeasible => "infeasible",
            Self::IterationLimit => "iteration-limit",
            Self::TimeLimit => "time-limit",
        }
    }

    /// The run terminated on its own rather than at a limit.
    pub fn converged(self) -> bool {
        !matches!(self, Self::IterationLimit | Self::TimeLimit)
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolveStatus {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            Self::EtaOptimal,
            Self::RelativeEtaOptimal,
            Self::EpsEtaApproximate,
            Self::Infeasible,
            Self::IterationLimit,
            Self::TimeLimit,
        ]
        .into_iter()
        .find(|st| st.as_str() == s)
        .ok_or_else(|| format!("unknown status `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub boxes_created: u64,
    pub pruned_by_bound: u64,
    pub pruned_infeasible: u64,
    pub reduced_to_empty: u64,
    pub degenerate: u64,
    pub incumbent_updates: u64,
    pub audit_violations: u64,
}

/// One line of the iteration trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: u64,
    pub box_id: u64,
    pub bound: f64,
    pub gamma: f64,
    pub queue_size: usize,
}

/// Writes the trace as CSV with header `k,box_id,bound,gamma,queue_size`.
pub fn write_trace_csv<W: Write>(rows: &[TraceRow], mut out: W) -> io::Result<()> {
    writeln!(out, "k,box_id,bound,gamma,queue_size")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.iteration, r.box_id, r.bound, r.gamma, r.queue_size
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub incumbent: Option<Vec<f64>>,
    /// Objective value at the incumbent, `-∞` if there is none.
    pub value: f64,
    pub status: SolveStatus,
    pub iterations: u64,
    pub peak_region_count: usize,
    /// Seconds.
    pub wall_time: f64,
    pub stats: SolverStats,
    pub trace: Vec<TraceRow>,
}

/// Upper bound `F(s, r)` of the objective over a box.
pub fn bound(objective: &MmFunction, region: &BoxNd) -> Result<f64> {
    objective.bound(region)
}

/// Bisection of `region` along its longest side (lowest index on ties); the
/// children are stamped with `iteration`.
pub fn bisect(region: &BoxNd, iteration: u64) -> Result<(BoxNd, BoxNd)> {
    region.bisect(iteration)
}

struct Search<'a> {
    problem: &'a ProblemInstance,
    config: &'a SolverConfig,
    queue: RegionQueue,
    gamma: f64,
    incumbent: Option<Vec<f64>>,
    stats: SolverStats,
    next_id: u64,
    peak: usize,
    audit_rng: ChaCha8Rng,
}

enum Fate {
    Keep(QueueEntry),
    Dropped,
}

impl<'a> Search<'a> {
    fn offer(&mut self, point: Vec<f64>) -> Result<()> {
        let value = self.problem.objective().diagonal(&point)?;
        if value > self.gamma {
            self.gamma = value;
            self.incumbent = Some(point);
            self.stats.incumbent_updates += 1;
        }
        Ok(())
    }

    /// Best point among a few box samples that violates no constraint by more
    /// than `epsilon`. Used only in approximate mode.
    fn approximate_point(&self, region: &BoxNd) -> Result<Option<Vec<f64>>> {
        let eps = self.config.epsilon_feasibility;
        let mut best: Option<(f64, Vec<f64>)> = None;
        for p in [region.lower().to_vec(), region.center(), region.upper().to_vec()] {
            if self.problem.max_violation(&p)? <= eps {
                let v = self.problem.objective().diagonal(&p)?;
                if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, p));
                }
            }
        }
        Ok(best.map(|(_, p)| p))
    }

    /// Steps 2 and 3 for one new box: reduce, classify, and harvest a
    /// feasible point. Bound pruning happens once both children are known.
    fn examine(&mut self, region: BoxNd, gamma_before: f64) -> Result<Fate> {
        let problem = self.problem;
        let region = if self.config.reduction_enabled {
            match reduce(
                &region,
                problem.objective(),
                problem.constraints(),
                gamma_before,
                self.config.reduction_bisection_steps,
            )? {
                Some(r) => r,
                None => {
                    self.stats.reduced_to_empty += 1;
                    return Ok(Fate::Dropped);
                }
            }
        } else {
            region
        };

        let corners = CornerValues::new(&region, problem.constraints());
        let found = assess(&region, problem, &corners)?;
        if found.infeasible {
            self.stats.pruned_infeasible += 1;
            return Ok(Fate::Dropped);
        }
        let point = match found.point {
            Some(p) => Some(p),
            None if self.config.epsilon_feasibility > 0.0 => self.approximate_point(&region)?,
            None => None,
        };
        if let Some(p) = point {
            self.offer(p)?;
        }

        if region.diameter() < MIN_DIAMETER {
            let r = region.lower();
            let slack = self.config.epsilon_feasibility;
            if problem.is_feasible(r, slack)? {
                self.offer(r.to_vec())?;
            }
            self.stats.degenerate += 1;
            return Ok(Fate::Dropped);
        }

        let bound = problem.objective().bound(&region)?;
        let id = self.next_id;
        self.next_id += 1;
        self.stats.boxes_created += 1;
        Ok(Fate::Keep(QueueEntry { region, bound, id }))
    }

    fn audit(&mut self, region: &BoxNd, bound: f64) -> Result<()> {
        let limit = self.config.prune_threshold(self.gamma);
        for _ in 0..AUDIT_SAMPLES {
            let x = sample_between(&mut self.audit_rng, region.lower(), region.upper());
            if !self.problem.is_feasible(&x, 0.0)? {
                continue;
            }
            let v = self.problem.objective().diagonal(&x)?;
            if v > limit + 1e-9 || v > bound + 1e-9 {
                self.stats.audit_violations += 1;
            }
        }
        Ok(())
    }

    fn admit(&mut self, entry: QueueEntry) -> Result<()> {
        if entry.bound <= self.config.prune_threshold(self.gamma) {
            self.stats.pruned_by_bound += 1;
            if self.config.audit_pruning {
                self.audit(&entry.region, entry.bound)?;
            }
        } else {
            self.queue.push(entry);
            self.peak = self.peak.max(self.queue.len());
        }
        Ok(())
    }
}

/// Runs branch-reduce-and-bound on `problem`.
pub fn solve(problem: &ProblemInstance, config: &SolverConfig) -> Result<SolverResult> {
    config.validate()?;
    let started = Instant::now();
    let mut search = Search {
        problem,
        config,
        queue: RegionQueue::new(config.selection_rule),
        gamma: f64::NEG_INFINITY,
        incumbent: None,
        stats: SolverStats::default(),
        next_id: 0,
        peak: 0,
        audit_rng: ChaCha8Rng::seed_from_u64(config.rng_seed),
    };
    let mut trace = Vec::new();

    // Step 0: the initial box is examined like any child, without reduction.
    let initial = problem.initial_box().clone().with_birth(0);
    let corners = CornerValues::new(&initial, problem.constraints());
    let found = assess(&initial, problem, &corners)?;
    if !found.infeasible {
        if let Some(p) = found.point {
            search.offer(p)?;
        } else if config.epsilon_feasibility > 0.0 {
            if let Some(p) = search.approximate_point(&initial)? {
                search.offer(p)?;
            }
        }
        if initial.diameter() < MIN_DIAMETER {
            if problem.is_feasible(initial.lower(), config.epsilon_feasibility)? {
                search.offer(initial.lower().to_vec())?;
            }
        } else {
            let bound = problem.objective().bound(&initial)?;
            search.next_id = 1;
            search.stats.boxes_created = 1;
            search.admit(QueueEntry {
                region: initial,
                bound,
                id: 0,
            })?;
        }
    } else {
        search.stats.pruned_infeasible += 1;
    }

    let mut iterations: u64 = 0;
    let mut pops: u64 = 0;
    let mut limit_status = None;
    loop {
        if config.selection_rule == SelectionRule::BestFirst
            || pops % OLDEST_FIRST_SCAN_PERIOD == 0
        {
            match search.queue.max_bound() {
                None => break,
                Some(u) if u <= config.prune_threshold(search.gamma) => break,
                Some(_) => {}
            }
        }
        if config.max_iterations.is_some_and(|m| iterations >= m) {
            limit_status = Some(SolveStatus::IterationLimit);
            break;
        }
        if config.max_wall_time.is_some_and(|t| started.elapsed() >= t) {
            limit_status = Some(SolveStatus::TimeLimit);
            break;
        }

        // Step 1
        let Some(selected) = search.queue.pop() else { break };
        pops += 1;
        if selected.bound <= config.prune_threshold(search.gamma) {
            // became prunable after the incumbent improved
            search.stats.pruned_by_bound += 1;
            continue;
        }
        iterations += 1;
        if config.trace {
            trace.push(TraceRow {
                iteration: iterations,
                box_id: selected.id,
                bound: selected.bound,
                gamma: search.gamma,
                queue_size: search.queue.len() + 1,
            });
        }
        let (low, high) = bisect(&selected.region, iterations)?;

        // Steps 2 and 3; the reduction uses the incumbent from before this iteration
        let gamma_before = search.gamma;
        let mut kept = Vec::with_capacity(2);
        for child in [low, high] {
            if let Fate::Keep(entry) = search.examine(child, gamma_before)? {
                kept.push(entry);
            }
        }
        // Step 4
        for entry in kept {
            search.admit(entry)?;
        }
    }

    let status = match limit_status {
        Some(s) => s,
        None if search.incumbent.is_none() => SolveStatus::Infeasible,
        None if config.epsilon_feasibility > 0.0 => SolveStatus::EpsEtaApproximate,
        None if config.tolerance_mode == ToleranceMode::Relative => SolveStatus::RelativeEtaOptimal,
        None => SolveStatus::EtaOptimal,
    };

    Ok(SolverResult {
        incumbent: search.incumbent,
        value: search.gamma,
        status,
        iterations,
        peak_region_count: search.peak,
        wall_time: started.elapsed().as_secs_f64(),
        stats: search.stats,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::FeasibilityVerdict;
    use crate::problem::{FeasibilityMode, MmConstraint};
    use std::sync::Arc;

    fn concave_1d() -> ProblemInstance {
        // f(x) = x(1 - x) on [0, 1], written as x·(1 − y)
        let f = MmFunction::new(1, |x, y| x[0] * (1.0 - y[0]));
        ProblemInstance::box_constrained(f, BoxNd::uniform(1, 0.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        assert!(SolverConfig::default().with_eta(0.0).validate().is_err());
        let c = SolverConfig {
            reduction_bisection_steps: 0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn degenerate_bound_is_function_value() {
        let f = MmFunction::new(2, |x, y| x[0] * x[1] - y[0]);
        let p = BoxNd::new(vec![0.3, 0.7], vec![0.3, 0.7]).unwrap();
        assert_eq!(bound(&f, &p).unwrap(), f.diagonal(&[0.3, 0.7]).unwrap());
    }

    #[test]
    fn solves_simple_concave_problem() {
        let res = solve(&concave_1d(), &SolverConfig::default().with_eta(1e-4)).unwrap();
        assert_eq!(res.status, SolveStatus::EtaOptimal);
        assert!(res.value >= 0.25 - 1e-4);
        assert!(res.value <= 0.25);
    }

    #[test]
    fn oldest_first_agrees() {
        let cfg = SolverConfig {
            selection_rule: SelectionRule::OldestFirst,
            ..SolverConfig::default().with_eta(1e-4)
        };
        let res = solve(&concave_1d(), &cfg).unwrap();
        assert_eq!(res.status, SolveStatus::EtaOptimal);
        assert!(res.value >= 0.25 - 1e-4);
    }

    #[test]
    fn gamma_is_nondecreasing_in_trace() {
        let cfg = SolverConfig {
            trace: true,
            ..SolverConfig::default().with_eta(1e-6)
        };
        let res = solve(&concave_1d(), &cfg).unwrap();
        assert_eq!(res.trace.len() as u64, res.iterations);
        for w in res.trace.windows(2) {
            assert!(w[1].gamma >= w[0].gamma);
            assert!(w[1].iteration == w[0].iteration + 1);
        }
        let mut csv = Vec::new();
        write_trace_csv(&res.trace, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("k,box_id,bound,gamma,queue_size\n"));
        assert_eq!(text.lines().count(), res.trace.len() + 1);
    }

    #[test]
    fn iteration_limit_is_a_status() {
        let cfg = SolverConfig {
            max_iterations: Some(3),
            ..SolverConfig::default().with_eta(1e-9)
        };
        let res = solve(&concave_1d(), &cfg).unwrap();
        assert_eq!(res.status, SolveStatus::IterationLimit);
        assert_eq!(res.iterations, 3);
        assert!(res.incumbent.is_some());
    }

    #[test]
    fn time_limit_is_a_status() {
        let cfg = SolverConfig {
            max_wall_time: Some(Duration::ZERO),
            ..Default::default()
        };
        let res = solve(&concave_1d(), &cfg).unwrap();
        assert_eq!(res.status, SolveStatus::TimeLimit);
    }

    #[test]
    fn infeasible_problem() {
        let f = MmFunction::new(1, |x, _| x[0]);
        let g = MmConstraint::new(MmFunction::new(1, |x, _| x[0] - 2.0 + 10.0));
        let p = ProblemInstance::new(
            f,
            vec![g],
            BoxNd::uniform(1, 0.0, 1.0).unwrap(),
            FeasibilityMode::MmSufficientOnly,
        )
        .unwrap();
        let res = solve(&p, &SolverConfig::default()).unwrap();
        assert_eq!(res.status, SolveStatus::Infeasible);
        assert_eq!(res.value, f64::NEG_INFINITY);
        assert!(res.incumbent.is_none());
    }

    #[test]
    fn conclusive_mode_with_split() {
        // maximize x_0 + x_1 subject to x_0 + x_1 ≤ 1 on [0, 1]^2
        let f = MmFunction::new(2, |x, _| x[0] + x[1]);
        let g = MmFunction::affine(vec![1.0, 1.0], vec![0.0, 0.0], -1.0).unwrap();
        let c = MmConstraint::with_split(g, [0, 1]).unwrap();
        let p = ProblemInstance::new(
            f,
            vec![c],
            BoxNd::uniform(2, 0.0, 1.0).unwrap(),
            FeasibilityMode::MmConclusive,
        )
        .unwrap();
        for rule in [SelectionRule::BestFirst, SelectionRule::OldestFirst] {
            for reduction in [false, true] {
                let cfg = SolverConfig {
                    selection_rule: rule,
                    reduction_enabled: reduction,
                    ..SolverConfig::default().with_eta(1e-3)
                };
                let res = solve(&p, &cfg).unwrap();
                assert_eq!(res.status, SolveStatus::EtaOptimal);
                assert!(res.value >= 1.0 - 1e-3 && res.value <= 1.0 + 1e-12);
                let x = res.incumbent.unwrap();
                assert!(x[0] + x[1] <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn conormal_mode() {
        // maximize -x_0 - x_1 subject to x_0 + x_1 ≥ 1, G(x, y) = 1 - y_0 - y_1
        let f = MmFunction::new(2, |_, y| -y[0] - y[1]);
        let g = MmFunction::affine(vec![0.0, 0.0], vec![1.0, 1.0], 1.0).unwrap();
        let p = ProblemInstance::new(
            f,
            vec![MmConstraint::new(g)],
            BoxNd::uniform(2, 0.0, 1.0).unwrap(),
            FeasibilityMode::Conormal,
        )
        .unwrap();
        let res = solve(&p, &SolverConfig::default().with_eta(1e-3)).unwrap();
        assert_eq!(res.status, SolveStatus::EtaOptimal);
        assert!(res.value >= -1.0 - 1e-3);
        let x = res.incumbent.unwrap();
        assert!(x[0] + x[1] >= 1.0 - 1e-9);
    }

    #[test]
    fn custom_oracle_and_hook() {
        // maximize x_0 on the disc-like set x_0^2 + x_1^2 ≤ 1 with an exact oracle
        let f = MmFunction::new(2, |x, _| x[0]);
        let g = MmFunction::new(2, |x, _| x[0] * x[0] + x[1] * x[1] - 1.0);
        let oracle = Arc::new(|b: &BoxNd| -> Result<FeasibilityVerdict> {
            let r = b.lower();
            if r[0] * r[0] + r[1] * r[1] <= 1.0 {
                Ok(FeasibilityVerdict::witness(r.to_vec()))
            } else {
                Ok(FeasibilityVerdict::infeasible())
            }
        });
        let p = ProblemInstance::new(
            f,
            vec![MmConstraint::new(g)],
            BoxNd::uniform(2, 0.0, 2.0).unwrap(),
            FeasibilityMode::CustomOracle(oracle),
        )
        .unwrap();
        let res = solve(&p, &SolverConfig::default().with_eta(1e-3)).unwrap();
        assert_eq!(res.status, SolveStatus::EtaOptimal);
        assert!(res.value >= 1.0 - 1e-3 && res.value <= 1.0 + 1e-9);
    }

    #[test]
    fn approximate_mode_reports_status() {
        // maximize x subject to x·x ≤ 0.5 (G(x, y) = x^2 - 0.5), sufficient tests only
        let f = MmFunction::new(1, |x, _| x[0]);
        let g = MmConstraint::new(MmFunction::new(1, |x, _| x[0] * x[0] - 0.5));
        let p = ProblemInstance::new(
            f,
            vec![g],
            BoxNd::uniform(1, 0.0, 1.0).unwrap(),
            FeasibilityMode::MmSufficientOnly,
        )
        .unwrap();
        let cfg = SolverConfig {
            epsilon_feasibility: 1e-3,
            ..SolverConfig::default().with_eta(1e-3)
        };
        let res = solve(&p, &cfg).unwrap();
        assert_eq!(res.status, SolveStatus::EpsEtaApproximate);
        let x = res.incumbent.unwrap();
        assert!(x[0] * x[0] - 0.5 <= 1e-3);
        assert!(res.value >= 0.5f64.sqrt() - 1e-3);
    }

    #[test]
    fn audit_finds_no_violations() {
        let cfg = SolverConfig {
            audit_pruning: true,
            ..SolverConfig::default().with_eta(1e-3)
        };
        let res = solve(&concave_1d(), &cfg).unwrap();
        assert!(res.stats.pruned_by_bound > 0);
        assert_eq!(res.stats.audit_violations, 0);
    }

    #[test]
    fn status_labels_round_trip() {
        for s in [
            SolveStatus::EtaOptimal,
            SolveStatus::RelativeEtaOptimal,
            SolveStatus::EpsEtaApproximate,
            SolveStatus::Infeasible,
            SolveStatus::IterationLimit,
            SolveStatus::TimeLimit,
        ] {
            assert_eq!(s.as_str().parse::<SolveStatus>().unwrap(), s);
        }
    }
}
