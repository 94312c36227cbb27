//! Mixed monotonic functions `F(x, y)` and monotone scalar maps.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boxes::BoxNd;
use crate::error::{MmpError, Result};

type EvalFn = dyn Fn(&[f64], &[f64]) -> Result<f64> + Send + Sync;

/// A function `F(x, y)` that is nondecreasing in `x` and nonincreasing in `y`.
///
/// Its diagonal `F(x, x)` is the objective (or constraint) it represents, and
/// `F(s, r)` bounds that diagonal from above on the box `[r, s]`.
///
/// Monotonicity is not verified at construction; leaf functions are trusted
/// and the combinators in [`crate::calculus`] preserve it. Use
/// [`check_mm_property`] to spot-check a function by sampling.
#[derive(Clone)]
pub struct MmFunction {
    dim: usize,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for MmFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MmFunction").field("dim", &self.dim).finish()
    }
}

impl MmFunction {
    /// Wraps an infallible closure as a trusted leaf.
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            dim,
            eval: Arc::new(move |x, y| Ok(f(x, y))),
        }
    }

    /// Wraps a fallible closure as a trusted leaf.
    pub fn try_new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            dim,
            eval: Arc::new(f),
        }
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        Self::new(dim, move |_, _| value)
    }

    /// `x_i`.
    pub fn coordinate(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(MmpError::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        Ok(Self::new(dim, move |x, _| x[index]))
    }

    /// `c + a·x − b·y` with `a, b ≥ 0`.
    pub fn affine(x_coeffs: Vec<f64>, y_coeffs: Vec<f64>, constant: f64) -> Result<Self> {
        if x_coeffs.len() != y_coeffs.len() {
            return Err(MmpError::DimensionMismatch {
                expected: x_coeffs.len(),
                found: y_coeffs.len(),
            });
        }
        for (index, &w) in x_coeffs.iter().chain(&y_coeffs).enumerate() {
            if !(w >= 0.0) {
                return Err(MmpError::NegativeWeight {
                    index: index % x_coeffs.len().max(1),
                    weight: w,
                });
            }
        }
        let dim = x_coeffs.len();
        Ok(Self::new(dim, move |x, y| {
            let mut acc = constant;
            for i in 0..x_coeffs.len() {
                acc += x_coeffs[i] * x[i] - y_coeffs[i] * y[i];
            }
            acc
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates `F(x, y)`. NaN results are reported as errors.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(MmpError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(MmpError::DimensionMismatch {
                expected: self.dim,
                found: y.len(),
            });
        }
        self.raw(x, y)
    }

    /// Evaluation without dimension checks, for use inside combinators.
    pub(crate) fn raw(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let v = (self.eval)(x, y)?;
        if v.is_nan() {
            return Err(MmpError::NanEvaluation);
        }
        Ok(v)
    }

    /// The represented function `f(x) = F(x, x)`.
    pub fn diagonal(&self, x: &[f64]) -> Result<f64> {
        self.eval(x, x)
    }

    /// Upper bound `F(s, r)` of the diagonal over the box `[r, s]`.
    pub fn bound(&self, region: &BoxNd) -> Result<f64> {
        self.eval(region.upper(), region.lower())
    }
}

/// Direction of a scalar map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Nondecreasing,
    Nonincreasing,
    /// Both nondecreasing and nonincreasing.
    Constant,
}

impl Monotonicity {
    fn admits(self, wanted: Monotonicity) -> bool {
        self == wanted || self == Monotonicity::Constant
    }
}

type ScalarFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// A scalar map with a declared monotonicity direction.
#[derive(Clone)]
pub struct ScalarMap {
    name: String,
    direction: Monotonicity,
    f: Arc<ScalarFn>,
}

impl fmt::Debug for ScalarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarMap")
            .field("name", &self.name)
            .field("direction", &self.direction)
            .finish()
    }
}

const DIRECTION_PROBES: usize = 100;

impl ScalarMap {
    fn builtin<F>(name: &str, direction: Monotonicity, f: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            direction,
            f: Arc::new(f),
        }
    }

    /// A user-supplied map. The declared direction is spot-checked at 100
    /// evenly spaced points of `[lo, hi]`; points where `f` is undefined are
    /// skipped.
    pub fn custom<F>(name: &str, direction: Monotonicity, probe: (f64, f64), f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        let map = Self::builtin(name, direction, f);
        map.verify_direction(probe.0, probe.1)?;
        Ok(map)
    }

    fn verify_direction(&self, lo: f64, hi: f64) -> Result<()> {
        let step = (hi - lo) / (DIRECTION_PROBES - 1) as f64;
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..DIRECTION_PROBES {
            let t = lo + step * i as f64;
            let Ok(v) = (self.f)(t) else { continue };
            if let Some((pt, pv)) = prev {
                let ok = match self.direction {
                    Monotonicity::Nondecreasing => v >= pv - 1e-12,
                    Monotonicity::Nonincreasing => v <= pv + 1e-12,
                    Monotonicity::Constant => (v - pv).abs() <= 1e-12,
                };
                if !ok {
                    return Err(MmpError::DirectionViolation {
                        map: self.name.clone(),
                        a: pt,
                        b: t,
                    });
                }
            }
            prev = Some((t, v));
        }
        Ok(())
    }

    fn domain_error(name: &str, value: f64) -> MmpError {
        MmpError::DomainError {
            map: name.to_string(),
            value,
        }
    }

    pub fn identity() -> Self {
        Self::builtin("identity", Monotonicity::Nondecreasing, Ok)
    }

    /// `log2(1 + v)`, defined for `v > -1`.
    pub fn log2_1p() -> Self {
        Self::builtin("log2_1p", Monotonicity::Nondecreasing, |v| {
            if v > -1.0 {
                Ok(v.ln_1p() / std::f64::consts::LN_2)
            } else {
                Err(Self::domain_error("log2_1p", v))
            }
        })
    }

    /// `log2(v)`, defined for `v > 0`.
    pub fn log2() -> Self {
        Self::builtin("log2", Monotonicity::Nondecreasing, |v| {
            if v > 0.0 {
                Ok(v.log2())
            } else {
                Err(Self::domain_error("log2", v))
            }
        })
    }

    /// Natural logarithm, defined for `v > 0`.
    pub fn ln() -> Self {
        Self::builtin("ln", Monotonicity::Nondecreasing, |v| {
            if v > 0.0 {
                Ok(v.ln())
            } else {
                Err(Self::domain_error("ln", v))
            }
        })
    }

    pub fn exp() -> Self {
        Self::builtin("exp", Monotonicity::Nondecreasing, |v| Ok(v.exp()))
    }

    /// `a·v + b`; direction follows the sign of `a`.
    pub fn affine(a: f64, b: f64) -> Self {
        let direction = if a > 0.0 {
            Monotonicity::Nondecreasing
        } else if a < 0.0 {
            Monotonicity::Nonincreasing
        } else {
            Monotonicity::Constant
        };
        Self::builtin("affine", direction, move |v| Ok(a * v + b))
    }

    pub fn negate() -> Self {
        Self::builtin("negate", Monotonicity::Nonincreasing, |v| Ok(-v))
    }

    /// `1 / v`, defined for `v > 0`.
    pub fn reciprocal() -> Self {
        Self::builtin("reciprocal", Monotonicity::Nonincreasing, |v| {
            if v > 0.0 {
                Ok(1.0 / v)
            } else {
                Err(Self::domain_error("reciprocal", v))
            }
        })
    }

    pub fn constant(c: f64) -> Self {
        Self::builtin("constant", Monotonicity::Constant, move |_| Ok(c))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn direction(&self) -> Monotonicity {
        self.direction
    }

    pub fn apply(&self, v: f64) -> Result<f64> {
        (self.f)(v)
    }

    pub(crate) fn require(&self, wanted: Monotonicity) -> Result<()> {
        if self.direction.admits(wanted) {
            Ok(())
        } else {
            Err(MmpError::WrongDirection {
                map: self.name.clone(),
            })
        }
    }
}

/// Outcome of [`check_mm_property`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MmCheckReport {
    /// Sampled pairs violating either monotonicity inequality by more than 1e-12.
    pub violations: usize,
    /// Largest violation amount seen (0 when there are none).
    pub worst_gap: f64,
    /// Samples where evaluation failed; these are not counted as violations.
    pub eval_errors: usize,
}

impl MmCheckReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0 && self.eval_errors == 0
    }
}

const MM_CHECK_TOL: f64 = 1e-12;

/// Uniform point in `[lower, upper]`.
pub(crate) fn sample_between<R: Rng>(rng: &mut R, lower: &[f64], upper: &[f64]) -> Vec<f64> {
    lower
        .iter()
        .zip(upper)
        .map(|(&lo, &hi)| if hi > lo { rng.random_range(lo..=hi) } else { lo })
        .collect()
}

fn sample_above<R: Rng>(rng: &mut R, from: &[f64], upper: &[f64]) -> Vec<f64> {
    if rng.random_bool(0.5) {
        // move a single coordinate to probe partial monotonicity
        let axis = rng.random_range(0..from.len());
        let mut p = from.to_vec();
        if upper[axis] > from[axis] {
            p[axis] = rng.random_range(from[axis]..=upper[axis]);
        }
        p
    } else {
        sample_between(rng, from, upper)
    }
}

/// Samples ordered pairs `x ≤ x'`, `y ≤ y'` in `region` and counts violations
/// of `F(x, y) ≤ F(x', y)` and `F(x, y) ≥ F(x, y')`.
pub fn check_mm_property(
    f: &MmFunction,
    region: &BoxNd,
    samples: usize,
    seed: u64,
) -> MmCheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MmCheckReport::default();
    if f.dim() != region.dim() {
        report.eval_errors = samples;
        return report;
    }
    let (lo, hi) = (region.lower(), region.upper());
    for _ in 0..samples.max(1) {
        let x = sample_between(&mut rng, lo, hi);
        let x_hi = sample_above(&mut rng, &x, hi);
        let y = sample_between(&mut rng, lo, hi);
        let y_hi = sample_above(&mut rng, &y, hi);

        let values = (|| -> Result<_> {
            Ok((f.eval(&x, &y)?, f.eval(&x_hi, &y)?, f.eval(&x, &y_hi)?))
        })();
        let Ok((base, up_x, up_y)) = values else {
            report.eval_errors += 1;
            continue;
        };
        for gap in [base - up_x, up_y - base] {
            if gap > MM_CHECK_TOL {
                report.violations += 1;
                report.worst_gap = report.worst_gap.max(gap);
            }
        }
    }
    report
}
