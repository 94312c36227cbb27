use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::boxes::BoxNd;
use crate::calculus::{mm_compose_nondecreasing, mm_compose_nonincreasing, mm_product, mm_sum};
use crate::error::{MmpError, Result};
use crate::function::{MmFunction, Monotonicity, ScalarMap};
use crate::problem::{FeasibilityMode, MmConstraint, ProblemInstance};

/// Lower end of every transmission probability, keeping the logarithms finite.
pub const ALOHA_DELTA: f64 = 1e-9;
/// Standard deviation of the minimum-rate shares drawn by [`generate_aloha`].
pub const RMIN_SHARE_STD: f64 = 0.05;

/// Slotted ALOHA network with proportional-fair utility: user `k` succeeds
/// with rate `c_k` when it transmits and none of `interferers[k]` does.
#[derive(Debug, Clone, PartialEq)]
pub struct AlohaNetwork {
    pub c: Vec<f64>,
    pub interferers: Vec<Vec<usize>>,
    pub rmin: Vec<f64>,
}

impl AlohaNetwork {
    pub fn new(c: Vec<f64>, interferers: Vec<Vec<usize>>, rmin: Vec<f64>) -> Result<Self> {
        let net = Self { c, interferers, rmin };
        net.validate()?;
        Ok(net)
    }

    /// Every user interferes with every other.
    pub fn full_interference(c: Vec<f64>, rmin: Vec<f64>) -> Result<Self> {
        let k = c.len();
        let interferers = (0..k).map(|i| (0..k).filter(|&j| j != i).collect()).collect();
        Self::new(c, interferers, rmin)
    }

    pub fn users(&self) -> usize {
        self.c.len()
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(MmpError::InvalidNetwork(m));
        let k = self.users();
        if k == 0 {
            return invalid("network has no users".into());
        }
        if self.interferers.len() != k {
            return invalid(format!("interferers has length {}, expected {k}", self.interferers.len()));
        }
        if self.rmin.len() != k {
            return invalid(format!("rmin has length {}, expected {k}", self.rmin.len()));
        }
        if let Some(i) = self.c.iter().position(|&c| !(c > 0.0) || !c.is_finite()) {
            return invalid(format!("c[{i}] = {} must be positive", self.c[i]));
        }
        if let Some(i) = self.rmin.iter().position(|&r| !(r >= 0.0) || !r.is_finite()) {
            return invalid(format!("rmin[{i}] = {} must be nonnegative", self.rmin[i]));
        }
        for (i, set) in self.interferers.iter().enumerate() {
            if let Some(&j) = set.iter().find(|&&j| j >= k) {
                return invalid(format!("interferers[{i}] contains {j}, out of range"));
            }
            if set.contains(&i) {
                return invalid(format!("user {i} listed as its own interferer"));
            }
        }
        Ok(())
    }

    /// Throughput `c_k θ_k Π_{j ∈ I(k)} (1 − θ_j)`.
    pub fn throughput(&self, k: usize, theta: &[f64]) -> f64 {
        self.c[k] * theta[k] * self.interferers[k].iter().map(|&j| 1.0 - theta[j]).product::<f64>()
    }

    /// `Σ_k ln(throughput_k)`.
    pub fn utility(&self, theta: &[f64]) -> f64 {
        (0..self.users()).map(|k| self.throughput(k, theta).ln()).sum()
    }
}

/// Largest throughput share every user can get at once under full
/// interference: `θ(1 − θ)^(K−1)` maximized at `θ = 1/K`.
pub fn symmetric_share_limit(k: usize) -> f64 {
    let kf = k as f64;
    (1.0 / kf) * (1.0 - 1.0 / kf).powi(k as i32 - 1)
}

/// Random full-interference network: `c_k = log2(1 + |a_k|²)` with
/// `a_k ~ CN(0, 1)` and `R_min,k = c_k χ_k`, `χ_k ~ N(mean, 0.05²)`
/// clipped at 0.
pub fn generate_aloha_with_mean(k: usize, seed: u64, mean: f64) -> Result<AlohaNetwork> {
    if k == 0 {
        return Err(MmpError::InvalidNetwork("network has no users".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let share = Normal::new(mean, RMIN_SHARE_STD).map_err(|e| MmpError::InvalidNetwork(e.to_string()))?;
    let c: Vec<f64> = (0..k)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            (0.5 * (re * re + im * im)).ln_1p() / std::f64::consts::LN_2
        })
        .collect();
    let rmin = c.iter().map(|ck| ck * share.sample(&mut rng).max(0.0)).collect();
    AlohaNetwork::full_interference(c, rmin)
}

/// [`generate_aloha_with_mean`] centered on [`symmetric_share_limit`], so
/// draws scatter around the edge of the feasible region.
pub fn generate_aloha(k: usize, seed: u64) -> Result<AlohaNetwork> {
    generate_aloha_with_mean(k, seed, symmetric_share_limit(k))
}

/// `ln` extended by `ln 0 = −∞`, so boxes touching `θ_j = 1` bound to `−∞`
/// instead of failing.
fn ln_or_neg_inf() -> ScalarMap {
    ScalarMap::custom("ln", Monotonicity::Nondecreasing, (0.0, 1.0), |v| {
        if v > 0.0 {
            Ok(v.ln())
        } else if v == 0.0 {
            Ok(f64::NEG_INFINITY)
        } else {
            Err(MmpError::DomainError {
                map: "ln".into(),
                value: v,
            })
        }
    })
    .expect("ln is increasing")
}

/// `R_k(x, y) = c_k x_k Π_{j ∈ I(k)} (1 − y_j)`.
pub fn throughput_function(net: &AlohaNetwork, k: usize, domain: &BoxNd) -> Result<MmFunction> {
    let n = net.users();
    let mut own = vec![0.0; n];
    own[k] = net.c[k];
    let mut factors = vec![MmFunction::affine(own, vec![0.0; n], 0.0)?];
    for &j in &net.interferers[k] {
        let mut yj = vec![0.0; n];
        yj[j] = 1.0;
        factors.push(MmFunction::affine(vec![0.0; n], yj, 1.0)?);
    }
    mm_product(factors, domain)
}

/// Proportional-fair utility maximization over `[δ, 1]^K` with
/// `G_k(x, y) = R_min,k − R_k(y, x)` for users with a positive minimum rate.
///
/// The constraints mix directions across users, so no shared monotone split
/// exists and the problem uses the one-sided feasibility tests.
pub fn aloha_problem(net: &AlohaNetwork) -> Result<ProblemInstance> {
    net.validate()?;
    let n = net.users();
    let domain = BoxNd::uniform(n, ALOHA_DELTA, 1.0)?;
    let mut utilities = Vec::with_capacity(n);
    let mut constraints = Vec::new();
    for k in 0..n {
        let rate = throughput_function(net, k, &domain)?;
        utilities.push(mm_compose_nondecreasing(ln_or_neg_inf(), rate.clone())?);
        if net.rmin[k] > 0.0 {
            let g = mm_compose_nonincreasing(ScalarMap::affine(-1.0, net.rmin[k]), rate)?;
            constraints.push(MmConstraint::new(g));
        }
    }
    ProblemInstance::new(mm_sum(utilities)?, constraints, domain, FeasibilityMode::MmSufficientOnly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_limit_values() {
        assert!((symmetric_share_limit(2) - 0.25).abs() < 1e-15);
        assert!((symmetric_share_limit(3) - 4.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn generator_is_deterministic() {
        assert_eq!(generate_aloha(3, 4).unwrap(), generate_aloha(3, 4).unwrap());
        let net = generate_aloha(3, 4).unwrap();
        assert_eq!(net.interferers, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
        assert!(net.rmin.iter().all(|&r| r >= 0.0));
    }

    #[test]
    fn validation() {
        assert!(AlohaNetwork::new(vec![1.0], vec![vec![0]], vec![0.0]).is_err());
        assert!(AlohaNetwork::new(vec![1.0, 1.0], vec![vec![2], vec![]], vec![0.0, 0.0]).is_err());
        assert!(AlohaNetwork::full_interference(vec![0.0, 1.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn objective_matches_utility() {
        let net = AlohaNetwork::full_interference(vec![1.0, 2.0, 0.5], vec![0.0; 3]).unwrap();
        let p = aloha_problem(&net).unwrap();
        assert!(p.constraints().is_empty());
        for theta in [[0.2, 0.3, 0.4], [0.5, 0.5, 0.5], [0.9, 0.01, 0.3]] {
            let v = p.objective().diagonal(&theta).unwrap();
            assert!((v - net.utility(&theta)).abs() < 1e-12);
        }
        assert_eq!(p.objective().diagonal(&[1.0, 0.5, 0.5]).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn constraints_have_no_shared_split() {
        let net = AlohaNetwork::full_interference(vec![1.0, 1.0], vec![0.1, 0.1]).unwrap();
        let p = aloha_problem(&net).unwrap();
        assert_eq!(p.constraints().len(), 2);
        let r = crate::feasibility::mm_conclusive_test(p.initial_box(), p.constraints());
        assert_eq!(r.unwrap_err(), MmpError::MissingMonotoneSplit);
    }
}
