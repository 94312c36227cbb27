use crate::boxes::BoxNd;
use crate::error::{MmpError, Result};
use crate::function::MmFunction;
use crate::problem::MmConstraint;

/// Largest `t ∈ [0, 1]` with `holds(t)`, for a predicate that is true on an
/// initial segment. `holds(0)` is assumed. Returns the upper end of the final
/// bracket after `steps` halvings, so the result never underestimates.
fn sup_from_above(steps: u32, mut holds: impl FnMut(f64) -> Result<bool>) -> Result<f64> {
    if holds(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

fn constraints_hold(constraints: &[MmConstraint], x: &[f64], y: &[f64]) -> Result<bool> {
    for c in constraints {
        if c.eval(x, y)? > 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shrinks `region` to a sub-box that keeps every feasible point with
/// objective value above `gamma`. Returns `None` when no such point can exist.
///
/// The lower corner moves up coordinate by coordinate as far as the bound
/// `F(s − α(s_i − r_i)e_i, r)` stays above `gamma` and the constraints
/// `G_j(r, s − α(s_i − r_i)e_i)` stay satisfiable; the upper corner then
/// moves down from the new lower corner in the same fashion. Each step
/// size is found by `steps` bisections rounded up.
pub fn reduce(
    region: &BoxNd,
    objective: &MmFunction,
    constraints: &[MmConstraint],
    gamma: f64,
    steps: u32,
) -> Result<Option<BoxNd>> {
    if steps == 0 {
        return Err(MmpError::InvalidConfig(
            "reduction needs at least one bisection step".into(),
        ));
    }
    let (r, s) = (region.lower(), region.upper());
    if !constraints_hold(constraints, r, s)? {
        return Ok(None);
    }
    if objective.eval(s, r)? <= gamma {
        return Ok(None);
    }
    let n = region.dim();

    let mut new_lower = r.to_vec();
    let mut probe = s.to_vec();
    for i in 0..n {
        let width = s[i] - r[i];
        if width <= 0.0 {
            continue;
        }
        let alpha = sup_from_above(steps, |a| {
            probe[i] = s[i] - a * width;
            Ok(objective.eval(&probe, r)? > gamma && constraints_hold(constraints, r, &probe)?)
        })?;
        probe[i] = s[i];
        new_lower[i] = (s[i] - alpha * width).max(r[i]);
    }

    let mut new_upper = s.to_vec();
    let mut probe = new_lower.clone();
    for i in 0..n {
        let width = s[i] - new_lower[i];
        if width <= 0.0 {
            continue;
        }
        let beta = sup_from_above(steps, |b| {
            probe[i] = new_lower[i] + b * width;
            Ok(objective.eval(s, &probe)? > gamma && constraints_hold(constraints, &probe, s)?)
        })?;
        probe[i] = new_lower[i];
        new_upper[i] = (new_lower[i] + beta * width).min(s[i]);
    }

    Ok(Some(BoxNd::from_parts(
        new_lower,
        new_upper,
        region.birth_iteration(),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_cut_no_constraints_keeps_box() {
        let f = MmFunction::new(2, |x, y| x[0] - y[1]);
        let b = BoxNd::new(vec![0.0, 1.0], vec![2.0, 3.0]).unwrap();
        let out = reduce(&b, &f, &[], f64::NEG_INFINITY, 10).unwrap().unwrap();
        assert_eq!(out, b);
    }

    #[test]
    fn objective_cut_one_dimensional() {
        let f = MmFunction::new(1, |x, _| x[0]);
        let b = BoxNd::new(vec![0.0], vec![1.0]).unwrap();
        let out = reduce(&b, &f, &[], 0.5, 10).unwrap().unwrap();
        // α = 0.5 exactly is the sup; rounding up keeps it at the bracket top
        assert!(out.lower()[0] <= 0.5);
        assert!(out.lower()[0] >= 0.5 - 1.0 / 1024.0);
        assert_eq!(out.upper()[0], 1.0);
    }

    #[test]
    fn infeasible_box_is_empty() {
        let f = MmFunction::new(1, |x, _| x[0]);
        let g = MmConstraint::new(MmFunction::new(1, |x, _| x[0] - 1.0));
        let b = BoxNd::new(vec![2.0], vec![3.0]).unwrap();
        assert_eq!(reduce(&b, &f, &[g], f64::NEG_INFINITY, 10).unwrap(), None);
    }

    #[test]
    fn dominated_box_is_empty() {
        let f = MmFunction::new(1, |x, _| x[0]);
        let b = BoxNd::new(vec![0.0], vec![1.0]).unwrap();
        assert_eq!(reduce(&b, &f, &[], 1.0, 10).unwrap(), None);
    }

    #[test]
    fn constraint_cuts_upper_corner() {
        // x_0 ≤ 0.3 with objective -x_0 - x_1 (prefers small values)
        let f = MmFunction::new(2, |_, y| -y[0] - y[1]);
        let g = MmConstraint::new(MmFunction::new(2, |x, _| x[0] - 0.3));
        let b = BoxNd::uniform(2, 0.0, 1.0).unwrap();
        let out = reduce(&b, &f, &[g], f64::NEG_INFINITY, 12).unwrap().unwrap();
        assert!(out.upper()[0] >= 0.3);
        assert!(out.upper()[0] <= 0.3 + 1.0 / 4096.0 + 1e-12);
        assert_eq!(out.upper()[1], 1.0);
        assert_eq!(out.lower(), &[0.0, 0.0]);
    }

    #[test]
    fn zero_steps_rejected() {
        let f = MmFunction::new(1, |x, _| x[0]);
        let b = BoxNd::new(vec![0.0], vec![1.0]).unwrap();
        assert!(reduce(&b, &f, &[], 0.0, 0).is_err());
    }
}
