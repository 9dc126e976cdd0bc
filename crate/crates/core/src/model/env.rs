//! Ground-truth multi-site environment specification.

use crate::error::{Error, Result};
use crate::model::data::{State, StateRef};
use crate::model::features::FeatureMap;
use crate::model::measure::MeasureFactor;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Additive reward noise applied on top of the linear mean; realized rewards
/// are clipped to [0, 1] afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RewardNoise {
    None,
    Uniform { width: f64 },
    Gaussian { sigma: f64 },
}

/// The state space of an environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StateKind {
    ContinuousUnitCube { dim: usize },
    Finite { states: Vec<State> },
}

/// True per-site parameters of a multi-site linear MDP: theta[k][h] and
/// mu[k][h] are length-d arrays defining rewards and transitions through the
/// shared feature map. The generating seed is recorded so any environment is
/// replayable bit-exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvSpec {
    pub sites: usize,
    pub horizon: usize,
    pub feature_map: FeatureMap,
    pub theta: Vec<Vec<Vec<f64>>>,
    pub mu: Vec<Vec<Vec<MeasureFactor>>>,
    pub reward_noise: RewardNoise,
    pub state_kind: StateKind,
    pub seed: u64,
}

impl EnvSpec {
    pub fn new(
        sites: usize,
        horizon: usize,
        feature_map: FeatureMap,
        theta: Vec<Vec<Vec<f64>>>,
        mu: Vec<Vec<Vec<MeasureFactor>>>,
        reward_noise: RewardNoise,
        state_kind: StateKind,
        seed: u64,
    ) -> Result<Self> {
        let env = EnvSpec {
            sites,
            horizon,
            feature_map,
            theta,
            mu,
            reward_noise,
            state_kind,
            seed,
        };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.feature_map.dim();
        if self.sites == 0 || self.horizon == 0 {
            return Err(Error::config("environment needs K >= 1 and H >= 1".to_string()));
        }
        if self.theta.len() != self.sites || self.mu.len() != self.sites {
            return Err(Error::config(format!(
                "theta/mu site count mismatch: {} / {} vs K = {}",
                self.theta.len(),
                self.mu.len(),
                self.sites
            )));
        }
        for k in 0..self.sites {
            if self.theta[k].len() != self.horizon || self.mu[k].len() != self.horizon {
                return Err(Error::config(format!(
                    "site {k}: theta/mu horizon mismatch (expected H = {})",
                    self.horizon
                )));
            }
            for h in 0..self.horizon {
                if self.theta[k][h].len() != d || self.mu[k][h].len() != d {
                    return Err(Error::config(format!(
                        "site {k} step {}: expected d = {d} coordinates",
                        h + 1
                    )));
                }
                for (i, v) in self.theta[k][h].iter().enumerate() {
                    if !(0.0..=1.0).contains(v) || !v.is_finite() {
                        return Err(Error::config(format!(
                            "theta[{k}][{}][{i}] = {v} outside [0, 1]",
                            h + 1
                        )));
                    }
                }
                // entries in [0,1] already imply ||theta||_2 <= sqrt(d)
                for (i, m) in self.mu[k][h].iter().enumerate() {
                    m.validate().map_err(|e| {
                        Error::config(format!("mu[{k}][{}][{i}]: {e}", h + 1))
                    })?;
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.feature_map.dim()
    }

    pub fn actions(&self) -> usize {
        self.feature_map.actions()
    }

    /// Expected (unclipped) reward phi(s, a)^T theta_h^k. Ground-truth
    /// planning always uses this linear mean; realized-data clipping lives
    /// only in the sampler.
    pub fn mean_reward(&self, k: usize, h: usize, s: StateRef<'_>, a: usize) -> f64 {
        self.feature_map.dot(s, a, &self.theta[k][h - 1])
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = ron::ser::to_string_pretty(self, ron::ser::PrettyConfig::default())
            .map_err(|e| Error::config(format!("env serialization failed: {e}")))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let env: EnvSpec = ron::de::from_str(&text)
            .map_err(|e| Error::data(format!("env parse failed at {}: {e}", path.display())))?;
        env.validate()?;
        Ok(env)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_env(theta_val: f64) -> Result<EnvSpec> {
        let fm = FeatureMap::HardInstance { actions: 3 };
        let d = fm.dim();
        let factor = MeasureFactor::Discrete {
            support: vec![State::code(1)],
            probs: vec![1.0],
        };
        EnvSpec::new(
            1,
            2,
            fm,
            vec![vec![vec![theta_val; d]; 2]],
            vec![vec![vec![factor; d]; 2]],
            RewardNoise::None,
            StateKind::Finite {
                states: vec![State::code(0), State::code(1), State::code(2)],
            },
            0,
        )
    }

    #[test]
    fn rejects_theta_outside_unit_interval() {
        assert!(tiny_env(0.5).is_ok());
        assert!(tiny_env(1.5).is_err());
        assert!(tiny_env(-0.1).is_err());
    }
}
