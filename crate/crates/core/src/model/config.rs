//! Run configuration shared by estimators and experiment drivers.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Estimator hyperparameters and reproducibility knobs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Ridge regularizer lambda.
    pub lambda: f64,
    /// Confidence parameter xi for the uncertainty quantifier.
    pub xi: f64,
    /// Penalty scale c in beta = c * d * H * sqrt(zeta).
    pub c: f64,
    /// Monte Carlo pool size per (site, step, coordinate) measure integral.
    pub mc_samples: usize,
    /// Master seed.
    pub seed: u64,
    /// Optional disjoint cover of the site indices for cluster pooling.
    pub clusters: Option<Vec<Vec<usize>>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lambda: 1.0,
            xi: 0.05,
            c: 5e-4,
            mc_samples: 4096,
            seed: 0,
            clusters: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self, sites: usize) -> Result<()> {
        if !(self.lambda > 0.0) {
            return Err(Error::config(format!("lambda must be > 0, got {}", self.lambda)));
        }
        if !(self.xi > 0.0 && self.xi < 1.0) {
            return Err(Error::config(format!("xi must lie in (0, 1), got {}", self.xi)));
        }
        if !(self.c >= 0.0) {
            return Err(Error::config(format!("c must be >= 0, got {}", self.c)));
        }
        if self.mc_samples == 0 {
            return Err(Error::config("mc_samples must be positive".to_string()));
        }
        if let Some(clusters) = &self.clusters {
            validate_partition(clusters, sites)?;
        }
        Ok(())
    }
}

/// Checks that `clusters` is a disjoint cover of 0..sites.
pub fn validate_partition(clusters: &[Vec<usize>], sites: usize) -> Result<()> {
    let mut seen = vec![false; sites];
    for (m, cluster) in clusters.iter().enumerate() {
        if cluster.is_empty() {
            return Err(Error::config(format!("cluster {m} is empty")));
        }
        for &k in cluster {
            if k >= sites {
                return Err(Error::config(format!(
                    "cluster {m} references site {k}, but K = {sites}"
                )));
            }
            if seen[k] {
                return Err(Error::config(format!("site {k} appears in two clusters")));
            }
            seen[k] = true;
        }
    }
    if let Some(k) = seen.iter().position(|covered| !covered) {
        return Err(Error::config(format!("site {k} is not covered by any cluster")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_matches_reference_schedule() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.lambda, 1.0);
        assert_eq!(cfg.xi, 0.05);
        assert_eq!(cfg.c, 5e-4);
        assert!(cfg.validate(3).is_ok());
    }

    #[test]
    fn partition_must_cover_disjointly() {
        assert!(validate_partition(&[vec![0, 1], vec![2]], 3).is_ok());
        assert!(validate_partition(&[vec![0, 1], vec![1, 2]], 3).is_err());
        assert!(validate_partition(&[vec![0, 1]], 3).is_err());
        assert!(validate_partition(&[vec![0], vec![]], 1).is_err());
    }
}
