use crate::boxes::BoxNd;
use crate::error::Result;
use crate::feasibility::{conclusive_from_corners, CornerValues, VerdictKind};
use crate::problem::{shared_split, FeasibilityMode, ProblemInstance};

/// Slack accepted when verifying points produced by user hooks or oracles.
pub(crate) const WITNESS_SLACK: f64 = 1e-9;

/// What the solver learned about a box's intersection with the feasible set.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Assessment {
    pub infeasible: bool,
    pub point: Option<Vec<f64>>,
}

fn verified(problem: &ProblemInstance, region: &BoxNd, point: Vec<f64>) -> Result<Option<Vec<f64>>> {
    if region.contains(&point, WITNESS_SLACK) && problem.is_feasible(&point, WITNESS_SLACK)? {
        Ok(Some(point))
    } else {
        Ok(None)
    }
}

/// Classifies the box and looks for a feasible point in it. The ladder is:
/// the exact corner witness when the feasibility mode has one, then the
/// caller's incumbent hook, then the lower corner of a box the one-sided
/// test shows to be entirely feasible.
pub(crate) fn assess(
    region: &BoxNd,
    problem: &ProblemInstance,
    corners: &CornerValues<'_>,
) -> Result<Assessment> {
    if corners.certainly_infeasible()? {
        return Ok(Assessment {
            infeasible: true,
            point: None,
        });
    }
    let n = region.dim();
    let mut point = match problem.feasibility_mode() {
        FeasibilityMode::MmConclusive => {
            let all: Vec<usize>;
            let split = match shared_split(problem.constraints())? {
                Some(s) => s,
                None => {
                    all = (0..n).collect();
                    &all
                }
            };
            conclusive_from_corners(corners, split)?.witness
        }
        FeasibilityMode::Normal => {
            let all: Vec<usize> = (0..n).collect();
            conclusive_from_corners(corners, &all)?.witness
        }
        FeasibilityMode::Conormal => conclusive_from_corners(corners, &[])?.witness,
        FeasibilityMode::MmSufficientOnly => None,
        FeasibilityMode::CustomOracle(oracle) => {
            let verdict = oracle(region)?;
            match verdict.kind {
                VerdictKind::Infeasible => {
                    return Ok(Assessment {
                        infeasible: true,
                        point: None,
                    })
                }
                VerdictKind::FeasibleWithWitness => match verdict.witness {
                    Some(w) => verified(problem, region, w)?,
                    None => None,
                },
                VerdictKind::FullyFeasible => Some(region.lower().to_vec()),
                VerdictKind::Unknown => None,
            }
        }
    };
    if point.is_none() {
        if let Some(hook) = problem.incumbent_hook() {
            if let Some(candidate) = hook(region) {
                point = verified(problem, region, candidate)?;
            }
        }
    }
    if point.is_none() && corners.certainly_feasible()? {
        point = Some(region.lower().to_vec());
    }
    Ok(Assessment {
        infeasible: false,
        point,
    })
}

/// A feasible point of `region`, if the problem's feasibility information
/// yields one.
pub fn find_incumbent(region: &BoxNd, problem: &ProblemInstance) -> Result<Option<Vec<f64>>> {
    let corners = CornerValues::new(region, problem.constraints());
    Ok(assess(region, problem, &corners)?.point)
}
