//! Combinators that preserve the mixed monotonic property.
//!
//! Every function here returns an [`MmFunction`] that is nondecreasing in its
//! first and nonincreasing in its second argument whenever its inputs are.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boxes::BoxNd;
use crate::error::{MmpError, Result};
use crate::function::{sample_between, MmFunction, Monotonicity, ScalarMap};

/// Tolerance below zero accepted for product factors and ratio numerators.
const NEGATIVITY_TOL: f64 = 1e-12;
const PRODUCT_PROBES: usize = 1000;

fn common_dim(parts: &[MmFunction]) -> Result<usize> {
    let first = parts.first().ok_or(MmpError::EmptyList)?;
    let dim = first.dim();
    if let Some(bad) = parts.iter().find(|p| p.dim() != dim) {
        return Err(MmpError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    Ok(dim)
}

/// `Σ F_i(x, y)`.
pub fn mm_sum(parts: Vec<MmFunction>) -> Result<MmFunction> {
    let dim = common_dim(&parts)?;
    Ok(MmFunction::try_new(dim, move |x, y| {
        let mut acc = 0.0;
        for p in &parts {
            acc += p.raw(x, y)?;
        }
        Ok(acc)
    }))
}

/// `Σ w_i F_i(x, y)` with `w_i ≥ 0`.
pub fn mm_weighted_sum(weights: &[f64], parts: Vec<MmFunction>) -> Result<MmFunction> {
    let dim = common_dim(&parts)?;
    if weights.len() != parts.len() {
        return Err(MmpError::DimensionMismatch {
            expected: parts.len(),
            found: weights.len(),
        });
    }
    if let Some((index, &weight)) = weights.iter().enumerate().find(|(_, w)| !(**w >= 0.0)) {
        return Err(MmpError::NegativeWeight { index, weight });
    }
    let terms: Vec<(f64, MmFunction)> = weights.iter().copied().zip(parts).collect();
    Ok(MmFunction::try_new(dim, move |x, y| {
        let mut acc = 0.0;
        for (w, p) in &terms {
            if *w != 0.0 {
                acc += w * p.raw(x, y)?;
            }
        }
        Ok(acc)
    }))
}

/// `c · F(x, y)` with `c ≥ 0`.
pub fn mm_scale(factor: f64, part: MmFunction) -> Result<MmFunction> {
    mm_weighted_sum(&[factor], vec![part])
}

/// Pointwise minimum.
pub fn mm_min(parts: Vec<MmFunction>) -> Result<MmFunction> {
    let dim = common_dim(&parts)?;
    Ok(MmFunction::try_new(dim, move |x, y| {
        let mut acc = f64::INFINITY;
        for p in &parts {
            acc = acc.min(p.raw(x, y)?);
        }
        Ok(acc)
    }))
}

/// Pointwise maximum.
pub fn mm_max(parts: Vec<MmFunction>) -> Result<MmFunction> {
    let dim = common_dim(&parts)?;
    Ok(MmFunction::try_new(dim, move |x, y| {
        let mut acc = f64::NEG_INFINITY;
        for p in &parts {
            acc = acc.max(p.raw(x, y)?);
        }
        Ok(acc)
    }))
}

/// `g(F(x, y))` for nondecreasing `g`.
pub fn mm_compose_nondecreasing(g: ScalarMap, f: MmFunction) -> Result<MmFunction> {
    g.require(Monotonicity::Nondecreasing)?;
    Ok(MmFunction::try_new(f.dim(), move |x, y| g.apply(f.raw(x, y)?)))
}

/// `h(F(y, x))` for nonincreasing `h`. The arguments are swapped so the
/// composition stays nondecreasing in `x` and nonincreasing in `y`.
pub fn mm_compose_nonincreasing(h: ScalarMap, f: MmFunction) -> Result<MmFunction> {
    h.require(Monotonicity::Nonincreasing)?;
    Ok(MmFunction::try_new(f.dim(), move |x, y| h.apply(f.raw(y, x)?)))
}

/// `Π F_i(x, y)` of factors that are nonnegative on `domain`.
///
/// Nonnegativity is probed at 1000 sampled pairs at construction and checked
/// again on every evaluation; a factor below `-1e-12` is an error. Factors in
/// `[-1e-12, 0)` are treated as zero.
pub fn mm_product(parts: Vec<MmFunction>, domain: &BoxNd) -> Result<MmFunction> {
    let dim = common_dim(&parts)?;
    if domain.dim() != dim {
        return Err(MmpError::DimensionMismatch {
            expected: dim,
            found: domain.dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_9a0d);
    for _ in 0..PRODUCT_PROBES {
        let x = sample_between(&mut rng, domain.lower(), domain.upper());
        let y = sample_between(&mut rng, domain.lower(), domain.upper());
        for p in &parts {
            let v = p.raw(&x, &y)?;
            if v < -NEGATIVITY_TOL {
                return Err(MmpError::NegativityDetected { value: v });
            }
        }
    }
    Ok(MmFunction::try_new(dim, move |x, y| {
        let mut acc = 1.0;
        for p in &parts {
            let v = p.raw(x, y)?;
            if v < -NEGATIVITY_TOL {
                return Err(MmpError::NegativityDetected { value: v });
            }
            acc *= v.max(0.0);
        }
        Ok(acc)
    }))
}

/// `N(x, y) / D(y, x)` for a nonnegative numerator and positive denominator.
///
/// `denominator` is itself an MM function; plugging it in with swapped
/// arguments and taking the reciprocal keeps the result MM. For a
/// denominator `q(x)` depending on `x` only this is `N(x, y) / q(y)`.
pub fn mm_ratio(numerator: MmFunction, denominator: MmFunction) -> Result<MmFunction> {
    let dim = common_dim(&[numerator.clone(), denominator.clone()])?;
    Ok(MmFunction::try_new(dim, move |x, y| {
        let q = denominator.raw(y, x)?;
        if !(q > 0.0) {
            return Err(MmpError::NonpositiveDenominator { value: q });
        }
        let n = numerator.raw(x, y)?;
        if n < -NEGATIVITY_TOL {
            return Err(MmpError::NegativityDetected { value: n });
        }
        Ok(n.max(0.0) / q)
    }))
}
