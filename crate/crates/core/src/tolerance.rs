use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// Absolute and relative tolerances shared by every predicate and solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol.is_finite() && abs_tol > 0.0 && rel_tol.is_finite() && rel_tol > 0.0) {
            return Err(GeometryError::Precondition(format!(
                "tolerances must be positive and finite (abs {abs_tol}, rel {rel_tol})"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    /// Whether two centers coincide under the scale-aware rule
    /// `|x - y| <= abs_tol * (1 + scale)`.
    pub fn coincide(&self, distance: f64, scale: f64) -> bool {
        distance <= self.abs_tol * (1.0 + scale)
    }
}

/// Relative spread `(max - min) / |mean|` of a list of values.
///
/// Falls back to the absolute spread when the mean vanishes.
pub fn relative_spread(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if mean.abs() > 0.0 {
        (hi - lo) / mean.abs()
    } else {
        hi - lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive() {
        assert!(Tolerance::new(0.0, 1e-8).is_err());
        assert!(Tolerance::new(1e-9, -1.0).is_err());
        assert!(Tolerance::new(f64::NAN, 1e-8).is_err());
        assert!(Tolerance::new(1e-12, 1e-12).is_ok());
    }

    #[test]
    fn spread() {
        assert_eq!(relative_spread(&[2.0, 2.0, 2.0]), 0.0);
        assert!((relative_spread(&[1.0, 3.0]) - 1.0).abs() < 1e-15);
        assert_eq!(relative_spread(&[-1.0, 1.0]), 2.0);
    }
}
