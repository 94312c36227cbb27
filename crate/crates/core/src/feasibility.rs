//! Box-level feasibility tests built from corner evaluations of the constraints.

use std::cell::OnceCell;

use crate::boxes::BoxNd;
use crate::error::{MmpError, Result};
use crate::problem::{shared_split, MmConstraint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    /// Every point of the box is feasible.
    FullyFeasible,
    /// No point of the box is feasible.
    Infeasible,
    /// The test cannot decide.
    Unknown,
    /// The box contains the attached feasible witness.
    FeasibleWithWitness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityVerdict {
    pub kind: VerdictKind,
    pub witness: Option<Vec<f64>>,
}

impl FeasibilityVerdict {
    pub fn fully_feasible() -> Self {
        Self {
            kind: VerdictKind::FullyFeasible,
            witness: None,
        }
    }

    pub fn infeasible() -> Self {
        Self {
            kind: VerdictKind::Infeasible,
            witness: None,
        }
    }

    pub fn unknown() -> Self {
        Self {
            kind: VerdictKind::Unknown,
            witness: None,
        }
    }

    pub fn witness(point: Vec<f64>) -> Self {
        Self {
            kind: VerdictKind::FeasibleWithWitness,
            witness: Some(point),
        }
    }

    pub fn is_infeasible(&self) -> bool {
        self.kind == VerdictKind::Infeasible
    }

    pub fn is_feasible(&self) -> bool {
        matches!(
            self.kind,
            VerdictKind::FullyFeasible | VerdictKind::FeasibleWithWitness
        )
    }
}

/// Lazily evaluated `G_i(r, s)` and `G_i(s, r)` for one box, shared by the
/// feasibility test, the reduction and pruning within an iteration.
pub struct CornerValues<'a> {
    region: &'a BoxNd,
    constraints: &'a [MmConstraint],
    lower_upper: OnceCell<Vec<f64>>,
    upper_lower: OnceCell<Vec<f64>>,
}

impl<'a> CornerValues<'a> {
    pub fn new(region: &'a BoxNd, constraints: &'a [MmConstraint]) -> Self {
        Self {
            region,
            constraints,
            lower_upper: OnceCell::new(),
            upper_lower: OnceCell::new(),
        }
    }

    fn fill(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        self.constraints.iter().map(|c| c.eval(x, y)).collect()
    }

    /// `G_i(r, s)`, the smallest value of each constraint on the box.
    pub fn lower_upper(&self) -> Result<&[f64]> {
        if self.lower_upper.get().is_none() {
            let v = self.fill(self.region.lower(), self.region.upper())?;
            let _ = self.lower_upper.set(v);
        }
        Ok(self.lower_upper.get().expect("set above"))
    }

    /// `G_i(s, r)`, the largest value of each constraint on the box.
    pub fn upper_lower(&self) -> Result<&[f64]> {
        if self.upper_lower.get().is_none() {
            let v = self.fill(self.region.upper(), self.region.lower())?;
            let _ = self.upper_lower.set(v);
        }
        Ok(self.upper_lower.get().expect("set above"))
    }

    /// `∃ i : G_i(r, s) > 0`.
    pub fn certainly_infeasible(&self) -> Result<bool> {
        Ok(self.lower_upper()?.iter().any(|&g| g > 0.0))
    }

    /// `∀ i : G_i(s, r) ≤ 0`.
    pub fn certainly_feasible(&self) -> Result<bool> {
        Ok(self.upper_lower()?.iter().all(|&g| g <= 0.0))
    }
}

fn check_dims(region: &BoxNd, constraints: &[MmConstraint]) -> Result<()> {
    match constraints.iter().find(|c| c.dim() != region.dim()) {
        Some(c) => Err(MmpError::DimensionMismatch {
            expected: region.dim(),
            found: c.dim(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn sufficient_from_corners(corners: &CornerValues<'_>) -> Result<FeasibilityVerdict> {
    if corners.certainly_infeasible()? {
        Ok(FeasibilityVerdict::infeasible())
    } else if corners.certainly_feasible()? {
        Ok(FeasibilityVerdict::fully_feasible())
    } else {
        Ok(FeasibilityVerdict::unknown())
    }
}

/// One-sided corner tests: `G_i(s, r) ≤ 0 ∀i` means the whole box is
/// feasible, `G_i(r, s) > 0` for some `i` means none of it is.
pub fn mm_sufficient_test(
    region: &BoxNd,
    constraints: &[MmConstraint],
) -> Result<FeasibilityVerdict> {
    check_dims(region, constraints)?;
    sufficient_from_corners(&CornerValues::new(region, constraints))
}

/// Point `ξ` with `ξ_j = r_j` for `j ∈ I` and `ξ_k = s_k` otherwise.
pub(crate) fn split_witness(region: &BoxNd, split: &[usize]) -> Vec<f64> {
    let mut xi = region.upper().to_vec();
    for &j in split {
        xi[j] = region.lower()[j];
    }
    xi
}

pub(crate) fn conclusive_from_corners(
    corners: &CornerValues<'_>,
    split: &[usize],
) -> Result<FeasibilityVerdict> {
    if corners.certainly_infeasible()? {
        Ok(FeasibilityVerdict::infeasible())
    } else {
        Ok(FeasibilityVerdict::witness(split_witness(corners.region, split)))
    }
}

/// Exact test for constraints sharing a monotone split `I`: the box meets the
/// feasible set iff `G_i(r, s) ≤ 0` for all `i`, with witness `ξ`.
pub fn mm_conclusive_test(
    region: &BoxNd,
    constraints: &[MmConstraint],
) -> Result<FeasibilityVerdict> {
    check_dims(region, constraints)?;
    let split = shared_split(constraints)?;
    let corners = CornerValues::new(region, constraints);
    // without constraints every point is feasible; ξ falls back to r
    let all: Vec<usize>;
    let split = match split {
        Some(s) => s,
        None => {
            all = (0..region.dim()).collect();
            &all
        }
    };
    conclusive_from_corners(&corners, split)
}

/// Test for `{x : g_i(x) ≤ 0}` with nondecreasing `g_i`: feasible iff
/// `g_i(r) ≤ 0` for all `i`, with witness `r`.
pub fn normal_set_test<G>(region: &BoxNd, gs: &[G]) -> FeasibilityVerdict
where
    G: Fn(&[f64]) -> f64,
{
    let r = region.lower();
    if gs.iter().all(|g| g(r) <= 0.0) {
        FeasibilityVerdict::witness(r.to_vec())
    } else {
        FeasibilityVerdict::infeasible()
    }
}

/// Test for `{x : h_i(x) ≥ 0}` with nondecreasing `h_i`: feasible iff
/// `h_i(s) ≥ 0` for all `i`, with witness `s`.
pub fn conormal_set_test<H>(region: &BoxNd, hs: &[H]) -> FeasibilityVerdict
where
    H: Fn(&[f64]) -> f64,
{
    let s = region.upper();
    if hs.iter().all(|h| h(s) >= 0.0) {
        FeasibilityVerdict::witness(s.to_vec())
    } else {
        FeasibilityVerdict::infeasible()
    }
}
