//! Probability-simplex vectors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Absolute tolerance on the entry sum.
pub const SIMPLEX_SUM_TOL: f64 = 1e-9;
/// Entries below this are rejected; negatives above it are clamped to zero.
pub const SIMPLEX_NEG_TOL: f64 = -1e-12;

/// A point on the probability simplex: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexVector(Vec<f64>);

impl SimplexVector {
    /// Validates and wraps `entries`. Tiny negatives (>= -1e-12) are clamped
    /// to zero; anything more negative, or a sum off by more than 1e-9, is
    /// rejected.
    pub fn new(mut entries: Vec<f64>) -> Result<Self> {
        for (i, e) in entries.iter_mut().enumerate() {
            if !e.is_finite() {
                return Err(Error::config(format!(
                    "simplex entry {i} is not finite: {e}"
                )));
            }
            if *e < 0.0 {
                if *e < SIMPLEX_NEG_TOL {
                    return Err(Error::config(format!(
                        "simplex entry {i} is negative: {e:e}"
                    )));
                }
                *e = 0.0;
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_SUM_TOL {
            return Err(Error::config(format!(
                "simplex entries sum to {sum}, expected 1 within {SIMPLEX_SUM_TOL:e}"
            )));
        }
        Ok(SimplexVector(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<usize> for SimplexVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_exact_simplex() {
        let v = SimplexVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(v.as_slice(), &[0.2, 0.3, 0.5]);
    }

    #[test]
    fn clamps_tiny_negatives() {
        let v = SimplexVector::new(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(v[1], 0.0);
    }

    #[test]
    fn rejects_bad_sum_and_real_negatives() {
        assert!(SimplexVector::new(vec![0.5, 0.6]).is_err());
        assert!(SimplexVector::new(vec![1.1, -0.1]).is_err());
        assert!(SimplexVector::new(vec![f64::NAN, 1.0]).is_err());
    }
}
