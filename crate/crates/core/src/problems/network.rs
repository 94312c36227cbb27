use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{MmpError, Result};

/// Noise power used by [`generate_channels`].
pub const DEFAULT_NOISE: f64 = 0.01;

/// A `K`-user interference channel with power caps, rate weights and
/// minimum rates.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceNetwork {
    /// Direct gains `α_k > 0`.
    pub alpha: Vec<f64>,
    /// `beta[k][j]` is the gain from transmitter `j` into receiver `k`; the
    /// diagonal models self-interference.
    pub beta: Vec<Vec<f64>>,
    pub sigma2: f64,
    /// Power caps `P_k > 0`.
    pub power: Vec<f64>,
    pub weights: Vec<f64>,
    pub rmin: Vec<f64>,
}

fn invalid(msg: impl Into<String>) -> MmpError {
    MmpError::InvalidNetwork(msg.into())
}

impl InterferenceNetwork {
    /// Network with unit weights and no minimum rates.
    pub fn new(alpha: Vec<f64>, beta: Vec<Vec<f64>>, sigma2: f64, power: Vec<f64>) -> Result<Self> {
        let k = alpha.len();
        let net = Self {
            alpha,
            beta,
            sigma2,
            power,
            weights: vec![1.0; k],
            rmin: vec![0.0; k],
        };
        net.validate()?;
        Ok(net)
    }

    pub fn users(&self) -> usize {
        self.alpha.len()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.users();
        if k == 0 {
            return Err(invalid("network has no users"));
        }
        for (name, len) in [
            ("beta", self.beta.len()),
            ("power", self.power.len()),
            ("weights", self.weights.len()),
            ("rmin", self.rmin.len()),
        ] {
            if len != k {
                return Err(invalid(format!("{name} has length {len}, expected {k}")));
            }
        }
        if let Some(row) = self.beta.iter().position(|r| r.len() != k) {
            return Err(invalid(format!("beta row {row} has length {}, expected {k}", self.beta[row].len())));
        }
        if let Some(i) = self.alpha.iter().position(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(invalid(format!("alpha[{i}] = {} must be positive", self.alpha[i])));
        }
        for (i, row) in self.beta.iter().enumerate() {
            if let Some(j) = row.iter().position(|&b| !(b >= 0.0) || !b.is_finite()) {
                return Err(invalid(format!("beta[{i}][{j}] = {} must be nonnegative", row[j])));
            }
        }
        if !(self.sigma2 > 0.0) || !self.sigma2.is_finite() {
            return Err(invalid(format!("sigma2 = {} must be positive", self.sigma2)));
        }
        if let Some(i) = self.power.iter().position(|&p| !(p > 0.0) || !p.is_finite()) {
            return Err(invalid(format!("power[{i}] = {} must be positive", self.power[i])));
        }
        if let Some(i) = self.weights.iter().position(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(invalid(format!("weights[{i}] = {} must be nonnegative", self.weights[i])));
        }
        if let Some(i) = self.rmin.iter().position(|&r| !(r >= 0.0) || !r.is_finite()) {
            return Err(invalid(format!("rmin[{i}] = {} must be nonnegative", self.rmin[i])));
        }
        Ok(())
    }

    /// Interference plus noise at receiver `k`, including self-interference.
    pub fn interference(&self, k: usize, p: &[f64]) -> f64 {
        self.sigma2 + self.beta[k].iter().zip(p).map(|(b, q)| b * q).sum::<f64>()
    }

    /// Rate of user `k` in bit/s/Hz at power vector `p`.
    pub fn rate(&self, k: usize, p: &[f64]) -> f64 {
        (self.alpha[k] * p[k] / self.interference(k, p)).ln_1p() / std::f64::consts::LN_2
    }

    pub fn weighted_sum_rate(&self, p: &[f64]) -> f64 {
        (0..self.users()).map(|k| self.weights[k] * self.rate(k, p)).sum()
    }

    pub fn has_rate_constraints(&self) -> bool {
        self.rmin.iter().any(|&r| r > 0.0)
    }
}

/// Squared magnitude of a `CN(0, 1)` variate.
fn fading<R: rand::Rng>(rng: &mut R) -> f64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    0.5 * (re * re + im * im)
}

/// Random `K`-user network with Rayleigh-fading gains and no
/// self-interference; `σ² = 0.01`, unit power caps and weights, no minimum
/// rates. Deterministic in `seed`.
pub fn generate_channels(k: usize, seed: u64) -> Result<InterferenceNetwork> {
    if k == 0 {
        return Err(invalid("network has no users"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha: Vec<f64> = (0..k).map(|_| fading(&mut rng)).collect();
    let beta = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { 0.0 } else { fading(&mut rng) })
                .collect()
        })
        .collect();
    InterferenceNetwork::new(alpha, beta, DEFAULT_NOISE, vec![1.0; k])
}
