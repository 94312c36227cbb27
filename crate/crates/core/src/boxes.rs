use crate::error::{MmpError, Result};

/// Axis-aligned box `[r, s]` with the iteration index at which it was created.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxNd {
    lower: Vec<f64>,
    upper: Vec<f64>,
    birth: u64,
}

/// Builds a box from its lower and upper corner. The birth iteration is 0.
pub fn make_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<BoxNd> {
    BoxNd::new(lower, upper)
}

impl BoxNd {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(MmpError::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(MmpError::EmptyBox);
        }
        for (index, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(MmpError::NonFiniteEntry { index });
            }
            if lo > hi {
                return Err(MmpError::CornerOrderViolation {
                    index,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self {
            lower,
            upper,
            birth: 0,
        })
    }

    /// Box `[lo, hi]^n`.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    /// Caller guarantees `lower <= upper` componentwise and finite entries.
    pub(crate) fn from_parts(lower: Vec<f64>, upper: Vec<f64>, birth: u64) -> Self {
        debug_assert_eq!(lower.len(), upper.len());
        debug_assert!(lower.iter().zip(&upper).all(|(a, b)| a <= b));
        Self {
            lower,
            upper,
            birth,
        }
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Iteration index of creation (`σ(M)`).
    pub fn birth_iteration(&self) -> u64 {
        self.birth
    }

    pub fn with_birth(mut self, birth: u64) -> Self {
        self.birth = birth;
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn width(&self, axis: usize) -> f64 {
        self.upper[axis] - self.lower[axis]
    }

    /// Longest side length.
    pub fn diameter(&self) -> f64 {
        (0..self.dim()).map(|i| self.width(i)).fold(0.0, f64::max)
    }

    /// Index of a longest side; ties go to the lowest index.
    pub fn longest_axis(&self) -> usize {
        let mut best = 0;
        let mut best_width = self.width(0);
        for axis in 1..self.dim() {
            let w = self.width(axis);
            if w > best_width {
                best = axis;
                best_width = w;
            }
        }
        best
    }

    pub fn center(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    pub fn contains(&self, point: &[f64], tol: f64) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| x >= lo - tol && x <= hi + tol)
    }

    pub fn contains_box(&self, other: &BoxNd) -> bool {
        other.dim() == self.dim()
            && (0..self.dim())
                .all(|i| other.lower[i] >= self.lower[i] && other.upper[i] <= self.upper[i])
    }

    /// Splits at the midpoint of a longest side. Both children carry `birth`.
    pub fn bisect(&self, birth: u64) -> Result<(BoxNd, BoxNd)> {
        if self.diameter() <= 0.0 {
            return Err(MmpError::ZeroDiameterBox);
        }
        let axis = self.longest_axis();
        let mid = 0.5 * (self.lower[axis] + self.upper[axis]);

        let mut low_upper = self.upper.clone();
        low_upper[axis] = mid;
        let mut high_lower = self.lower.clone();
        high_lower[axis] = mid;

        Ok((
            BoxNd::from_parts(self.lower.clone(), low_upper, birth),
            BoxNd::from_parts(high_lower, self.upper.clone(), birth),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square() {
        let b = make_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.diameter(), 1.0);
        assert_eq!(b.birth_iteration(), 0);
    }

    #[test]
    fn degenerate_box_is_valid() {
        let b = make_box(vec![0.0], vec![0.0]).unwrap();
        assert_eq!(b.diameter(), 0.0);
    }

    #[test]
    fn corner_order_violation() {
        let err = make_box(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap_err();
        assert!(matches!(err, MmpError::CornerOrderViolation { index: 0, .. }));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            make_box(vec![0.0], vec![1.0, 2.0]),
            Err(MmpError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            make_box(vec![0.0, f64::NAN], vec![1.0, 2.0]),
            Err(MmpError::NonFiniteEntry { index: 1 })
        ));
        assert!(matches!(
            make_box(vec![0.0], vec![f64::INFINITY]),
            Err(MmpError::NonFiniteEntry { index: 0 })
        ));
        assert!(matches!(make_box(vec![], vec![]), Err(MmpError::EmptyBox)));
    }

    #[test]
    fn bisect_longest_side() {
        let b = make_box(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap();
        let (lo, hi) = b.bisect(3).unwrap();
        assert_eq!(lo.lower(), &[0.0, 0.0]);
        assert_eq!(lo.upper(), &[1.0, 1.0]);
        assert_eq!(hi.lower(), &[0.0, 1.0]);
        assert_eq!(hi.upper(), &[1.0, 2.0]);
        assert_eq!(lo.birth_iteration(), 3);
        assert_eq!(hi.birth_iteration(), 3);
    }

    #[test]
    fn bisect_tie_goes_to_first_axis() {
        let b = BoxNd::uniform(3, 0.0, 1.0).unwrap();
        let (lo, hi) = b.bisect(1).unwrap();
        assert_eq!(lo.upper(), &[0.5, 1.0, 1.0]);
        assert_eq!(hi.lower(), &[0.5, 0.0, 0.0]);
    }

    #[test]
    fn bisect_skips_degenerate_axis() {
        let b = make_box(vec![0.0, 0.0], vec![0.0, 4.0]).unwrap();
        let (lo, hi) = b.bisect(1).unwrap();
        assert_eq!(lo.upper(), &[0.0, 2.0]);
        assert_eq!(hi.lower(), &[0.0, 2.0]);
    }

    #[test]
    fn bisect_zero_diameter_fails() {
        let b = make_box(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(b.bisect(1), Err(MmpError::ZeroDiameterBox));
    }
}
