//! Per-coordinate transition measure factors.

use crate::error::{Error, Result};
use crate::model::data::State;
use crate::model::simplex::SIMPLEX_SUM_TOL;
use serde::{Deserialize, Serialize};

/// One unnormalized-notation measure factor mu_{h,i}^k. Total mass is 1 in
/// both forms: discrete factors carry an explicit simplex over support
/// states, Beta-product factors are products of normalized densities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MeasureFactor {
    Discrete {
        support: Vec<State>,
        probs: Vec<f64>,
    },
    BetaProduct {
        alpha: Vec<f64>,
        beta: Vec<f64>,
    },
}

impl MeasureFactor {
    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureFactor::Discrete { support, probs } => {
                if support.len() != probs.len() {
                    return Err(Error::config(format!(
                        "discrete factor: {} support states but {} probabilities",
                        support.len(),
                        probs.len()
                    )));
                }
                if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
                    return Err(Error::config("discrete factor: negative or non-finite probability".to_string()));
                }
                let sum: f64 = probs.iter().sum();
                if (sum - 1.0).abs() > SIMPLEX_SUM_TOL {
                    return Err(Error::config(format!(
                        "discrete factor probabilities sum to {sum}"
                    )));
                }
                Ok(())
            }
            MeasureFactor::BetaProduct { alpha, beta } => {
                if alpha.len() != beta.len() || alpha.is_empty() {
                    return Err(Error::config(
                        "beta-product factor: shape vectors must be nonempty and equal length".to_string(),
                    ));
                }
                if alpha.iter().chain(beta).any(|x| !x.is_finite() || *x <= 0.0) {
                    return Err(Error::config(
                        "beta-product factor: shape parameters must be positive".to_string(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// State dimension this factor draws (None for discrete support).
    pub fn continuous_dim(&self) -> Option<usize> {
        match self {
            MeasureFactor::Discrete { .. } => None,
            MeasureFactor::BetaProduct { alpha, .. } => Some(alpha.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_discrete_simplex() {
        let ok = MeasureFactor::Discrete {
            support: vec![State::code(1), State::code(2)],
            probs: vec![0.6, 0.4],
        };
        assert!(ok.validate().is_ok());
        let bad = MeasureFactor::Discrete {
            support: vec![State::code(1)],
            probs: vec![0.9],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn rejects_nonpositive_shapes() {
        let bad = MeasureFactor::BetaProduct {
            alpha: vec![1.0, 0.0],
            beta: vec![1.0, 1.0],
        };
        assert!(bad.validate().is_err());
    }
}
