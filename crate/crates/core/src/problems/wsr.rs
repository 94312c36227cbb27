use std::fmt;
use std::str::FromStr;

use crate::boxes::BoxNd;
use crate::calculus::{mm_compose_nondecreasing, mm_compose_nonincreasing, mm_sum, mm_weighted_sum};
use crate::error::{MmpError, Result};
use crate::function::{MmFunction, Monotonicity, ScalarMap};
use crate::problem::{FeasibilityMode, MmConstraint, ProblemInstance};

use super::network::InterferenceNetwork;

/// How the rate functions are written as MM functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Each rate as `log2(1 + SINR)` with the desired power in `x` and the
    /// interfering powers in `y`.
    Mmp,
    /// Each rate as a difference of two logs; every power in the first log
    /// is bound to `x`, every power in the second to `y`.
    Dm,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Mmp => "mmp",
            Self::Dm => "dm",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mmp" => Ok(Self::Mmp),
            "dm" => Ok(Self::Dm),
            other => Err(format!("unknown representation `{other}`")),
        }
    }
}

fn neg_log2() -> ScalarMap {
    ScalarMap::custom("neg_log2", Monotonicity::Nonincreasing, (1e-3, 1e3), |v| {
        if v > 0.0 {
            Ok(-v.log2())
        } else {
            Err(MmpError::DomainError {
                map: "neg_log2".into(),
                value: v,
            })
        }
    })
    .expect("-log2 is decreasing")
}

fn sinr(net: &InterferenceNetwork, k: usize) -> MmFunction {
    let alpha = net.alpha[k];
    let sigma2 = net.sigma2;
    let beta = net.beta[k].clone();
    MmFunction::new(net.users(), move |x, y| {
        let mut den = sigma2 + beta[k] * x[k];
        for (j, (b, yj)) in beta.iter().zip(y).enumerate() {
            if j != k {
                den += b * yj;
            }
        }
        alpha * x[k] / den
    })
}

/// Rate of user `k` in the chosen representation.
pub fn rate_function(net: &InterferenceNetwork, k: usize, representation: Representation) -> Result<MmFunction> {
    let n = net.users();
    match representation {
        Representation::Mmp => mm_compose_nondecreasing(ScalarMap::log2_1p(), sinr(net, k)),
        Representation::Dm => {
            let mut signal = net.beta[k].clone();
            signal[k] += net.alpha[k];
            let total = MmFunction::affine(signal, vec![0.0; n], net.sigma2)?;
            let interference = MmFunction::affine(net.beta[k].clone(), vec![0.0; n], net.sigma2)?;
            mm_sum(vec![
                mm_compose_nondecreasing(ScalarMap::log2(), total)?,
                mm_compose_nonincreasing(neg_log2(), interference)?,
            ])
        }
    }
}

/// `Σ_k w_k R_k(x, y)`.
pub fn weighted_sum_rate_function(net: &InterferenceNetwork, representation: Representation) -> Result<MmFunction> {
    let rates = (0..net.users())
        .map(|k| rate_function(net, k, representation))
        .collect::<Result<Vec<_>>>()?;
    mm_weighted_sum(&net.weights, rates)
}

/// `[0, P]`.
pub fn power_box(net: &InterferenceNetwork) -> Result<BoxNd> {
    BoxNd::new(vec![0.0; net.users()], net.power.clone())
}

/// `G_k(x, y) = R_min,k − R_k(y, x)` for every user with a positive minimum rate.
pub(crate) fn rate_constraints(net: &InterferenceNetwork) -> Result<Vec<MmConstraint>> {
    let mut out = Vec::new();
    for k in 0..net.users() {
        if net.rmin[k] > 0.0 {
            let rate = rate_function(net, k, Representation::Mmp)?;
            let g = mm_compose_nonincreasing(ScalarMap::affine(-1.0, net.rmin[k]), rate)?;
            out.push(MmConstraint::new(g));
        }
    }
    Ok(out)
}

fn rate_feasibility_mode(constraints: &[MmConstraint]) -> FeasibilityMode {
    if constraints.is_empty() {
        FeasibilityMode::Normal
    } else {
        FeasibilityMode::MmSufficientOnly
    }
}

/// Weighted sum rate maximization over `[0, P]` with minimum-rate constraints.
pub fn wsr_problem(net: &InterferenceNetwork, representation: Representation) -> Result<ProblemInstance> {
    net.validate()?;
    let objective = weighted_sum_rate_function(net, representation)?;
    let constraints = rate_constraints(net)?;
    let mode = rate_feasibility_mode(&constraints);
    ProblemInstance::new(objective, constraints, power_box(net)?, mode)
}

/// `U_dm(box) − U_mmp(box)`, the amount by which the difference-of-logs
/// bound of the weighted sum rate exceeds the SINR bound.
///
/// Evaluated per user as two log ratios whose arguments are at least 1, so
/// the result is nonnegative and exactly 0 on a degenerate box.
pub fn bound_gap_mmp_vs_dm(net: &InterferenceNetwork, region: &BoxNd) -> Result<f64> {
    net.validate()?;
    let k = net.users();
    if region.dim() != k {
        return Err(MmpError::DimensionMismatch {
            expected: k,
            found: region.dim(),
        });
    }
    let (r, s) = (region.lower(), region.upper());
    let mut gap = 0.0;
    for i in 0..k {
        let beta = &net.beta[i];
        let (mut cross_r, mut cross_s) = (0.0, 0.0);
        for j in (0..k).filter(|&j| j != i) {
            cross_r += beta[j] * r[j];
            cross_s += beta[j] * s[j];
        }
        let own_s = net.sigma2 + beta[i] * s[i];
        let own_r = net.sigma2 + beta[i] * r[i];
        let signal = net.alpha[i] * s[i];
        // first log of the DM bound vs the numerator of the SINR bound
        let interference = ((cross_s - cross_r) / (signal + own_s + cross_r)).ln_1p();
        // self-interference read at s by the SINR bound and at r by the DM bound
        let own = ((own_s - own_r) / (own_r + cross_r)).ln_1p();
        gap += net.weights[i] * (interference + own) / std::f64::consts::LN_2;
    }
    Ok(gap)
}
