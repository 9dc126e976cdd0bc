//! Simplex feature maps.
//!
//! Two concrete maps are provided:
//!
//! * `Blocked`: the state vector is l1-normalized and written into the block
//!   belonging to the chosen action, all other blocks zero (d = p * A).
//! * `HardInstance`: the three-state absorbing-chain map where the initial
//!   state exposes one basis vector per action and each absorbing state maps
//!   every action to its own dedicated coordinate (d = A + 2).
//!
//! Both always produce simplex vectors, which is what makes the feature-wise
//! worst-case backup a per-coordinate minimum.

use crate::error::{Error, Result};
use crate::model::data::StateRef;
use crate::model::simplex::SimplexVector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureMap {
    /// Action-blocked l1-normalized state features; `d = state_dim * actions`.
    Blocked { state_dim: usize, actions: usize },
    /// Absorbing-chain basis features over states {s0, s1, s2}; `d = actions + 2`.
    HardInstance { actions: usize },
}

impl FeatureMap {
    pub fn dim(&self) -> usize {
        match *self {
            FeatureMap::Blocked { state_dim, actions } => state_dim * actions,
            FeatureMap::HardInstance { actions } => actions + 2,
        }
    }

    pub fn actions(&self) -> usize {
        match *self {
            FeatureMap::Blocked { actions, .. } => actions,
            FeatureMap::HardInstance { actions } => actions,
        }
    }

    /// phi(s, a) as a simplex vector.
    pub fn eval(&self, s: StateRef<'_>, a: usize) -> Result<SimplexVector> {
        let mut buf = vec![0.0; self.dim()];
        self.eval_into(s, a, &mut buf)?;
        SimplexVector::new(buf)
    }

    /// Writes phi(s, a) into `buf` (len d, zeroed here). Hot-loop variant of
    /// [`FeatureMap::eval`] that skips the simplex re-validation.
    pub fn eval_into(&self, s: StateRef<'_>, a: usize, buf: &mut [f64]) -> Result<()> {
        if buf.len() != self.dim() {
            return Err(Error::config(format!(
                "feature buffer has length {}, expected {}",
                buf.len(),
                self.dim()
            )));
        }
        buf.fill(0.0);
        match (*self, s) {
            (FeatureMap::Blocked { state_dim, actions }, StateRef::Vector(v)) => {
                check_blocked_args(v, a, state_dim, actions)?;
                let block = &mut buf[a * state_dim..(a + 1) * state_dim];
                write_normalized(v, block);
                Ok(())
            }
            (FeatureMap::HardInstance { actions }, StateRef::Code(code)) => {
                let idx = hard_instance_index(code, a, actions)?;
                buf[idx] = 1.0;
                Ok(())
            }
            _ => Err(Error::config(
                "state kind does not match feature map".to_string(),
            )),
        }
    }

    /// phi(s, a)^T w without materializing phi.
    pub fn dot(&self, s: StateRef<'_>, a: usize, w: &[f64]) -> f64 {
        debug_assert_eq!(w.len(), self.dim());
        match (*self, s) {
            (FeatureMap::Blocked { state_dim, .. }, StateRef::Vector(v)) => {
                let block = &w[a * state_dim..(a + 1) * state_dim];
                let total: f64 = v.iter().sum();
                if total <= 0.0 {
                    block.iter().sum::<f64>() / state_dim as f64
                } else {
                    v.iter().zip(block).map(|(x, wi)| x * wi).sum::<f64>() / total
                }
            }
            (FeatureMap::HardInstance { actions }, StateRef::Code(code)) => {
                w[hard_instance_index(code, a, actions).expect("hard-instance state/action")]
            }
            _ => panic!("state kind does not match feature map"),
        }
    }

    /// Quadratic form phi(s, a)^T M phi(s, a) for a row-major d x d matrix.
    pub fn quad(&self, s: StateRef<'_>, a: usize, m: &[f64]) -> f64 {
        let d = self.dim();
        debug_assert_eq!(m.len(), d * d);
        match (*self, s) {
            (FeatureMap::Blocked { state_dim, .. }, StateRef::Vector(v)) => {
                let total: f64 = v.iter().sum();
                let base = a * state_dim;
                let mut acc = 0.0;
                if total <= 0.0 {
                    let u = 1.0 / state_dim as f64;
                    for i in 0..state_dim {
                        let row = &m[(base + i) * d + base..(base + i) * d + base + state_dim];
                        acc += u * row.iter().sum::<f64>() * u;
                    }
                } else {
                    for i in 0..state_dim {
                        let xi = v[i] / total;
                        if xi == 0.0 {
                            continue;
                        }
                        let row = &m[(base + i) * d + base..(base + i) * d + base + state_dim];
                        let inner: f64 = row.iter().zip(v.iter()).map(|(mij, xj)| mij * xj).sum();
                        acc += xi * inner / total;
                    }
                }
                acc
            }
            (FeatureMap::HardInstance { actions }, StateRef::Code(code)) => {
                let idx = hard_instance_index(code, a, actions).expect("hard-instance state/action");
                m[idx * d + idx]
            }
            _ => panic!("state kind does not match feature map"),
        }
    }
}

fn check_blocked_args(state: &[f64], action: usize, state_dim: usize, actions: usize) -> Result<()> {
    if state.len() != state_dim {
        return Err(Error::config(format!(
            "state has dimension {}, feature map expects {state_dim}",
            state.len()
        )));
    }
    if action >= actions {
        return Err(Error::config(format!(
            "action {action} out of range (|A| = {actions})"
        )));
    }
    Ok(())
}

/// l1-normalizes `state` into `out`; an all-zero state maps to the uniform
/// block so the simplex invariant holds on boundary states.
fn write_normalized(state: &[f64], out: &mut [f64]) {
    let total: f64 = state.iter().sum();
    if total <= 0.0 {
        out.fill(1.0 / out.len() as f64);
    } else {
        for (o, &x) in out.iter_mut().zip(state) {
            *o = x / total;
        }
    }
}

fn hard_instance_index(code: u32, action: usize, actions: usize) -> Result<usize> {
    if action >= actions {
        return Err(Error::config(format!(
            "action {action} out of range (|A| = {actions})"
        )));
    }
    match code {
        0 => Ok(action),
        1 => Ok(actions),
        2 => Ok(actions + 1),
        _ => Err(Error::config(format!(
            "hard-instance state code {code} out of range (expected 0..3)"
        ))),
    }
}

/// Blocked features as a free function over raw state entries.
pub fn blocked_features(
    state: &[f64],
    action: usize,
    state_dim: usize,
    actions: usize,
) -> Result<SimplexVector> {
    FeatureMap::Blocked { state_dim, actions }.eval(StateRef::Vector(state), action)
}

/// Hard-instance features as a free function over the state code.
pub fn hard_instance_features(code: u32, action: usize, actions: usize) -> Result<SimplexVector> {
    if actions < 3 {
        return Err(Error::config(format!(
            "hard instance needs at least 3 actions, got {actions}"
        )));
    }
    FeatureMap::HardInstance { actions }.eval(StateRef::Code(code), action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocked_inserts_normalized_state_into_action_block() {
        // sum already 1: block 2 carries the state unchanged
        let f = blocked_features(&[0.2, 0.3, 0.5], 2, 3, 10).unwrap();
        assert_eq!(f.len(), 30);
        assert_eq!(&f.as_slice()[6..9], &[0.2, 0.3, 0.5]);
        assert!(f.as_slice()[..6].iter().all(|&x| x == 0.0));
        assert!(f.as_slice()[9..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn blocked_zero_state_maps_to_uniform_block() {
        let f = blocked_features(&[0.0, 0.0, 0.0], 0, 3, 10).unwrap();
        let third = 1.0 / 3.0;
        assert_eq!(&f.as_slice()[..3], &[third, third, third]);
    }

    #[test]
    fn blocked_l1_normalizes() {
        let f = blocked_features(&[1.0, 1.0, 0.0], 1, 3, 2).unwrap();
        assert_eq!(&f.as_slice()[3..6], &[0.5, 0.5, 0.0]);
    }

    #[test]
    fn blocked_rejects_dimension_mismatch() {
        assert!(blocked_features(&[0.1, 0.2], 0, 3, 10).is_err());
        assert!(blocked_features(&[0.1, 0.2, 0.3], 10, 3, 10).is_err());
    }

    #[test]
    fn hard_instance_basis_positions() {
        // (s0, b_1) -> e_1 in R^9 (paper's 1-based positions)
        let f = hard_instance_features(0, 0, 7).unwrap();
        assert_eq!(f.len(), 9);
        assert_eq!(f[0], 1.0);
        // (s1, b_5) -> e_8 in R^9
        let f = hard_instance_features(1, 4, 7).unwrap();
        assert_eq!(f[7], 1.0);
        // (s2, b_2) -> e_5 in R^5
        let f = hard_instance_features(2, 1, 3).unwrap();
        assert_eq!(f.len(), 5);
        assert_eq!(f[4], 1.0);
    }

    #[test]
    fn dot_matches_materialized_features() {
        let fm = FeatureMap::Blocked {
            state_dim: 3,
            actions: 4,
        };
        let w: Vec<f64> = (0..12).map(|i| i as f64 * 0.37 - 1.0).collect();
        let s = [0.4, 0.1, 0.9];
        for a in 0..4 {
            let phi = fm.eval(StateRef::Vector(&s), a).unwrap();
            let direct = fm.dot(StateRef::Vector(&s), a, &w);
            let via_vec: f64 = phi.as_slice().iter().zip(&w).map(|(p, wi)| p * wi).sum();
            assert!((direct - via_vec).abs() < 1e-15);
        }
    }
}
