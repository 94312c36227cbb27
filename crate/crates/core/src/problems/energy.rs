use crate::calculus::{mm_min, mm_ratio, mm_scale, mm_sum, mm_weighted_sum};
use crate::error::{MmpError, Result};
use crate::function::MmFunction;
use crate::problem::ProblemInstance;
use crate::solver::{solve, SolverConfig, SolverResult};

use super::network::InterferenceNetwork;
use super::wsr::{power_box, rate_function, Representation};

/// Default outer tolerance for [`dinkelbach_gee`].
pub const DEFAULT_LAMBDA_TOL: f64 = 1e-6;
const MAX_OUTER_ITERATIONS: usize = 100;

/// Power consumption model: amplifier inefficiencies `φ`, static circuit
/// power and bandwidth.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyModel {
    pub phi: Vec<f64>,
    /// Circuit power of the whole network, used by the global efficiency.
    pub pc: f64,
    /// Per-user circuit powers, needed by the weighted sum and weighted
    /// minimum efficiencies.
    pub pc_user: Option<Vec<f64>>,
    pub bandwidth: f64,
}

impl EnergyModel {
    pub fn new(phi: Vec<f64>, pc: f64, bandwidth: f64) -> Self {
        Self {
            phi,
            pc,
            pc_user: None,
            bandwidth,
        }
    }

    pub fn with_user_circuit_power(mut self, pc_user: Vec<f64>) -> Self {
        self.pc_user = Some(pc_user);
        self
    }

    /// Checks the model against a `k`-user network. `φ = 0` is accepted, which
    /// turns the global efficiency into a scaled sum rate.
    pub fn validate(&self, k: usize) -> Result<()> {
        let invalid = |m: String| Err(MmpError::InvalidNetwork(m));
        if self.phi.len() != k {
            return invalid(format!("phi has length {}, expected {k}", self.phi.len()));
        }
        if let Some(i) = self.phi.iter().position(|&p| !(p >= 0.0) || !p.is_finite()) {
            return invalid(format!("phi[{i}] = {} must be nonnegative", self.phi[i]));
        }
        if !(self.pc > 0.0) || !self.pc.is_finite() {
            return invalid(format!("Pc = {} must be positive", self.pc));
        }
        if !(self.bandwidth > 0.0) || !self.bandwidth.is_finite() {
            return invalid(format!("B = {} must be positive", self.bandwidth));
        }
        if let Some(pcu) = &self.pc_user {
            if pcu.len() != k {
                return invalid(format!("per-user Pc has length {}, expected {k}", pcu.len()));
            }
            if let Some(i) = pcu.iter().position(|&p| !(p > 0.0) || !p.is_finite()) {
                return invalid(format!("per-user Pc[{i}] = {} must be positive", pcu[i]));
            }
        }
        Ok(())
    }

    /// `φᵀp + P_c`.
    pub fn consumed_power(&self, p: &[f64]) -> f64 {
        self.phi.iter().zip(p).map(|(f, q)| f * q).sum::<f64>() + self.pc
    }

    fn user_pc(&self) -> Result<&[f64]> {
        self.pc_user
            .as_deref()
            .ok_or_else(|| MmpError::InvalidNetwork("per-user circuit power missing".into()))
    }
}

/// Global energy efficiency `B·Σ_k R_k(p) / (φᵀp + P_c)`, evaluated directly.
pub fn global_energy_efficiency(net: &InterferenceNetwork, energy: &EnergyModel, p: &[f64]) -> f64 {
    let sum_rate: f64 = (0..net.users()).map(|k| net.rate(k, p)).sum();
    energy.bandwidth * sum_rate / energy.consumed_power(p)
}

fn checked(net: &InterferenceNetwork, energy: &EnergyModel) -> Result<()> {
    net.validate()?;
    energy.validate(net.users())
}

fn user_efficiency(net: &InterferenceNetwork, energy: &EnergyModel, k: usize, pc: f64) -> Result<MmFunction> {
    let n = net.users();
    let mut phi = vec![0.0; n];
    phi[k] = energy.phi[k];
    let denominator = MmFunction::affine(phi, vec![0.0; n], pc)?;
    let numerator = mm_scale(energy.bandwidth, rate_function(net, k, Representation::Mmp)?)?;
    mm_ratio(numerator, denominator)
}

/// Global energy efficiency maximization over `[0, P]`; rate constraints and
/// weights of the network are ignored.
pub fn gee_problem(net: &InterferenceNetwork, energy: &EnergyModel) -> Result<ProblemInstance> {
    checked(net, energy)?;
    let n = net.users();
    let rates = (0..n)
        .map(|k| rate_function(net, k, Representation::Mmp))
        .collect::<Result<Vec<_>>>()?;
    let numerator = mm_scale(energy.bandwidth, mm_sum(rates)?)?;
    let denominator = MmFunction::affine(energy.phi.clone(), vec![0.0; n], energy.pc)?;
    let objective = mm_ratio(numerator, denominator)?;
    ProblemInstance::box_constrained(objective, power_box(net)?)
}

/// Weighted sum of per-user efficiencies `B·R_k / (φ_k p_k + P_c,k)`.
pub fn wsee_problem(net: &InterferenceNetwork, energy: &EnergyModel) -> Result<ProblemInstance> {
    checked(net, energy)?;
    let pcu = energy.user_pc()?;
    let terms = (0..net.users())
        .map(|k| user_efficiency(net, energy, k, pcu[k]))
        .collect::<Result<Vec<_>>>()?;
    let objective = mm_weighted_sum(&net.weights, terms)?;
    ProblemInstance::box_constrained(objective, power_box(net)?)
}

/// Weighted minimum of per-user efficiencies `w_k·B·R_k / (φ_k p_k + P_c,k)`.
pub fn wmee_problem(net: &InterferenceNetwork, energy: &EnergyModel) -> Result<ProblemInstance> {
    checked(net, energy)?;
    let pcu = energy.user_pc()?;
    let terms = (0..net.users())
        .map(|k| mm_scale(net.weights[k], user_efficiency(net, energy, k, pcu[k])?))
        .collect::<Result<Vec<_>>>()?;
    let objective = mm_min(terms)?;
    ProblemInstance::box_constrained(objective, power_box(net)?)
}

/// Outcome of [`dinkelbach_gee_detailed`].
#[derive(Debug, Clone, PartialEq)]
pub struct DinkelbachRun {
    /// Final power vector, its efficiency, and iteration counts summed over
    /// all inner solves.
    pub result: SolverResult,
    /// Parameter sequence, starting at 0.
    pub lambdas: Vec<f64>,
}

/// Global energy efficiency by Dinkelbach's method. See
/// [`dinkelbach_gee_detailed`].
pub fn dinkelbach_gee(
    net: &InterferenceNetwork,
    energy: &EnergyModel,
    inner_config: &SolverConfig,
    lambda_tol: f64,
) -> Result<SolverResult> {
    Ok(dinkelbach_gee_detailed(net, energy, inner_config, lambda_tol)?.result)
}

/// Dinkelbach's method: starting from `λ = 0`, maximize
/// `B·Σ_k R_k(p) − λ(φᵀp + P_c)` by branch and bound on the
/// difference-of-logs rates, then set `λ` to the efficiency of the maximizer.
/// Stops once the auxiliary optimum is at most `lambda_tol`.
pub fn dinkelbach_gee_detailed(
    net: &InterferenceNetwork,
    energy: &EnergyModel,
    inner_config: &SolverConfig,
    lambda_tol: f64,
) -> Result<DinkelbachRun> {
    checked(net, energy)?;
    if !(lambda_tol > 0.0) {
        return Err(MmpError::InvalidConfig(format!("lambda_tol must be positive, got {lambda_tol}")));
    }
    let n = net.users();
    let rates = (0..n)
        .map(|k| rate_function(net, k, Representation::Dm))
        .collect::<Result<Vec<_>>>()?;
    let benefit = mm_scale(energy.bandwidth, mm_sum(rates)?)?;
    let region = power_box(net)?;

    let mut lambda = 0.0;
    let mut lambdas = vec![lambda];
    let mut iterations = 0;
    let mut peak = 0;
    let mut wall_time = 0.0;
    for _ in 0..MAX_OUTER_ITERATIONS {
        let cost: Vec<f64> = energy.phi.iter().map(|f| lambda * f).collect();
        let penalty = MmFunction::affine(vec![0.0; n], cost, -lambda * energy.pc)?;
        let aux = mm_sum(vec![benefit.clone(), penalty])?;
        let problem = ProblemInstance::box_constrained(aux, region.clone())?;
        let inner = solve(&problem, inner_config)?;
        iterations += inner.iterations;
        peak = peak.max(inner.peak_region_count);
        wall_time += inner.wall_time;
        if !inner.status.converged() {
            return Err(MmpError::InnerSolveFailed(format!(
                "auxiliary problem at lambda = {lambda} stopped with status {}",
                inner.status
            )));
        }
        let Some(p) = inner.incumbent else {
            return Err(MmpError::InnerSolveFailed(format!(
                "auxiliary problem at lambda = {lambda} returned no point"
            )));
        };
        let efficiency = global_energy_efficiency(net, energy, &p);
        if inner.value <= lambda_tol {
            return Ok(DinkelbachRun {
                result: SolverResult {
                    incumbent: Some(p),
                    value: efficiency,
                    status: inner.status,
                    iterations,
                    peak_region_count: peak,
                    wall_time,
                    stats: inner.stats,
                    trace: Vec::new(),
                },
                lambdas,
            });
        }
        lambda = efficiency;
        lambdas.push(lambda);
    }
    Err(MmpError::InnerSolveFailed(format!(
        "no convergence within {MAX_OUTER_ITERATIONS} outer iterations"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::network::generate_channels;
    use crate::solver::SolveStatus;

    #[test]
    fn zero_phi_gives_sum_rate() {
        let net = generate_channels(3, 5).unwrap();
        let energy = EnergyModel::new(vec![0.0; 3], 1.0, 1.0);
        let p = gee_problem(&net, &energy).unwrap();
        for x in [[0.1, 0.5, 0.9], [1.0, 1.0, 1.0], [0.0, 0.3, 0.0]] {
            let v = p.objective().diagonal(&x).unwrap();
            let sum: f64 = (0..3).map(|k| net.rate(k, &x)).sum();
            assert!((v - sum).abs() < 1e-12);
        }
    }

    #[test]
    fn gee_matches_direct_formula() {
        let net = generate_channels(2, 9).unwrap();
        let energy = EnergyModel::new(vec![5.0, 5.0], 1.0, 2.0);
        let p = gee_problem(&net, &energy).unwrap();
        let v = p.objective().diagonal(&[1.0, 1.0]).unwrap();
        assert!((v - global_energy_efficiency(&net, &energy, &[1.0, 1.0])).abs() < 1e-12);
    }

    #[test]
    fn per_user_power_required() {
        let net = generate_channels(2, 9).unwrap();
        let energy = EnergyModel::new(vec![1.0, 1.0], 1.0, 1.0);
        assert!(matches!(wsee_problem(&net, &energy), Err(MmpError::InvalidNetwork(_))));
        assert!(wmee_problem(&net, &energy).is_err());
    }

    #[test]
    fn model_validation() {
        let e = EnergyModel::new(vec![1.0], 0.0, 1.0);
        assert!(e.validate(1).is_err());
        let e = EnergyModel::new(vec![-1.0], 1.0, 1.0);
        assert!(e.validate(1).is_err());
        let e = EnergyModel::new(vec![1.0], 1.0, 1.0);
        assert!(e.validate(2).is_err());
        assert!(e.validate(1).is_ok());
    }

    #[test]
    fn dinkelbach_rejects_bad_tolerance() {
        let net = generate_channels(1, 0).unwrap();
        let energy = EnergyModel::new(vec![1.0], 1.0, 1.0);
        assert!(dinkelbach_gee(&net, &energy, &SolverConfig::default(), 0.0).is_err());
    }

    #[test]
    fn dinkelbach_starts_at_zero() {
        let net = generate_channels(1, 0).unwrap();
        let energy = EnergyModel::new(vec![5.0], 1.0, 1.0);
        let run = dinkelbach_gee_detailed(&net, &energy, &SolverConfig::default(), DEFAULT_LAMBDA_TOL).unwrap();
        assert_eq!(run.lambdas[0], 0.0);
        assert!(run.lambdas.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(run.result.status, SolveStatus::EtaOptimal);
    }
}
