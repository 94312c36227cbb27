use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boxes::BoxNd;
use crate::error::{MmpError, Result};
use crate::feasibility::FeasibilityVerdict;
use crate::function::{sample_between, MmFunction};

/// Constraint `G(x, x) ≤ 0` with `G` mixed monotonic.
#[derive(Debug, Clone)]
pub struct MmConstraint {
    g: MmFunction,
    monotone_split: Option<Vec<usize>>,
}

impl MmConstraint {
    pub fn new(g: MmFunction) -> Self {
        Self {
            g,
            monotone_split: None,
        }
    }

    /// Constraint whose `G` only reads `x_j` for `j ∈ I` and `y_k` for `k ∉ I`.
    ///
    /// The split is trusted; [`MmConstraint::split_violations`] spot-checks it.
    pub fn with_split(g: MmFunction, split: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut split: Vec<usize> = split.into_iter().collect();
        split.sort_unstable();
        split.dedup();
        if let Some(&bad) = split.iter().find(|&&i| i >= g.dim()) {
            return Err(MmpError::DimensionMismatch {
                expected: g.dim(),
                found: bad + 1,
            });
        }
        Ok(Self {
            g,
            monotone_split: Some(split),
        })
    }

    pub fn function(&self) -> &MmFunction {
        &self.g
    }

    pub fn monotone_split(&self) -> Option<&[usize]> {
        self.monotone_split.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `G(x, y)`.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.g.eval(x, y)
    }

    /// `G(x, x)`; the point is feasible for this constraint when it is `≤ 0`.
    pub fn value_at(&self, x: &[f64]) -> Result<f64> {
        self.g.eval(x, x)
    }

    /// Counts sampled pairs in `region` where zeroing the coordinates the
    /// split says are ignored changes `G(x, y)` by more than 1e-12.
    pub fn split_violations(&self, region: &BoxNd, samples: usize, seed: u64) -> usize {
        let Some(split) = &self.monotone_split else {
            return samples;
        };
        let n = self.dim();
        let in_split: Vec<bool> = (0..n).map(|i| split.binary_search(&i).is_ok()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = 0;
        for _ in 0..samples {
            let x = sample_between(&mut rng, region.lower(), region.upper());
            let y = sample_between(&mut rng, region.lower(), region.upper());
            let xs: Vec<f64> = (0..n).map(|i| if in_split[i] { x[i] } else { 0.0 }).collect();
            let ys: Vec<f64> = (0..n).map(|i| if in_split[i] { 0.0 } else { y[i] }).collect();
            match (self.g.eval(&x, &y), self.g.eval(&xs, &ys)) {
                (Ok(a), Ok(b)) if (a - b).abs() <= 1e-12 => {}
                _ => violations += 1,
            }
        }
        violations
    }
}

/// Box-level feasibility oracle supplied by the caller.
pub type FeasibilityOracle = Arc<dyn Fn(&BoxNd) -> Result<FeasibilityVerdict> + Send + Sync>;

/// Heuristic that tries to produce a feasible point inside a box.
pub type IncumbentHook = Arc<dyn Fn(&BoxNd) -> Option<Vec<f64>> + Send + Sync>;

/// How the solver decides whether a box contains feasible points.
#[derive(Clone)]
pub enum FeasibilityMode {
    /// All constraints share a monotone split; the corner test is exact.
    MmConclusive,
    /// Constraints are `g(x) ≤ 0` with `g` nondecreasing, written as `G(x, y) = g(x)`.
    Normal,
    /// Constraints are `h(x) ≥ 0` with `h` nondecreasing, written as `G(x, y) = -h(y)`.
    Conormal,
    /// Only the one-sided corner tests are available. The algorithm may not
    /// terminate and then stops at its iteration or time limit.
    MmSufficientOnly,
    CustomOracle(FeasibilityOracle),
}

impl fmt::Debug for FeasibilityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::MmConclusive => "MmConclusive",
            Self::Normal => "Normal",
            Self::Conormal => "Conormal",
            Self::MmSufficientOnly => "MmSufficientOnly",
            Self::CustomOracle(_) => "CustomOracle",
        };
        f.write_str(name)
    }
}

/// Objective, constraints and the enclosing box of a maximization problem.
#[derive(Clone)]
pub struct ProblemInstance {
    objective: MmFunction,
    constraints: Vec<MmConstraint>,
    initial_box: BoxNd,
    feasibility_mode: FeasibilityMode,
    incumbent_hook: Option<IncumbentHook>,
}

impl fmt::Debug for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemInstance")
            .field("dim", &self.dim())
            .field("constraints", &self.constraints.len())
            .field("initial_box", &self.initial_box)
            .field("feasibility_mode", &self.feasibility_mode)
            .field("incumbent_hook", &self.incumbent_hook.is_some())
            .finish()
    }
}

impl ProblemInstance {
    pub fn new(
        objective: MmFunction,
        constraints: Vec<MmConstraint>,
        initial_box: BoxNd,
        feasibility_mode: FeasibilityMode,
    ) -> Result<Self> {
        let n = initial_box.dim();
        if objective.dim() != n {
            return Err(MmpError::DimensionMismatch {
                expected: n,
                found: objective.dim(),
            });
        }
        if let Some(c) = constraints.iter().find(|c| c.dim() != n) {
            return Err(MmpError::DimensionMismatch {
                expected: n,
                found: c.dim(),
            });
        }
        if matches!(feasibility_mode, FeasibilityMode::MmConclusive) {
            shared_split(&constraints)?;
        }
        Ok(Self {
            objective,
            constraints,
            initial_box,
            feasibility_mode,
            incumbent_hook: None,
        })
    }

    /// Unconstrained problem over a box.
    pub fn box_constrained(objective: MmFunction, initial_box: BoxNd) -> Result<Self> {
        Self::new(objective, Vec::new(), initial_box, FeasibilityMode::Normal)
    }

    pub fn with_incumbent_hook(mut self, hook: IncumbentHook) -> Self {
        self.incumbent_hook = Some(hook);
        self
    }

    pub fn with_objective(mut self, objective: MmFunction) -> Result<Self> {
        if objective.dim() != self.dim() {
            return Err(MmpError::DimensionMismatch {
                expected: self.dim(),
                found: objective.dim(),
            });
        }
        self.objective = objective;
        Ok(self)
    }

    pub fn objective(&self) -> &MmFunction {
        &self.objective
    }

    pub fn constraints(&self) -> &[MmConstraint] {
        &self.constraints
    }

    pub fn initial_box(&self) -> &BoxNd {
        &self.initial_box
    }

    pub fn feasibility_mode(&self) -> &FeasibilityMode {
        &self.feasibility_mode
    }

    pub fn incumbent_hook(&self) -> Option<&IncumbentHook> {
        self.incumbent_hook.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.initial_box.dim()
    }

    /// Largest `G_i(x, x)` over all constraints (`-∞` without constraints).
    pub fn max_violation(&self, x: &[f64]) -> Result<f64> {
        let mut worst = f64::NEG_INFINITY;
        for c in &self.constraints {
            worst = worst.max(c.value_at(x)?);
        }
        Ok(worst)
    }

    /// `true` when every constraint satisfies `G_i(x, x) ≤ slack`.
    pub fn is_feasible(&self, x: &[f64], slack: f64) -> Result<bool> {
        Ok(self.max_violation(x)? <= slack)
    }
}

/// The monotone split shared by all constraints.
pub(crate) fn shared_split(constraints: &[MmConstraint]) -> Result<Option<&[usize]>> {
    let mut shared: Option<&[usize]> = None;
    for c in constraints {
        let split = c.monotone_split().ok_or(MmpError::MissingMonotoneSplit)?;
        match shared {
            None => shared = Some(split),
            Some(s) if s == split => {}
            Some(_) => return Err(MmpError::MissingMonotoneSplit),
        }
    }
    Ok(shared)
}
