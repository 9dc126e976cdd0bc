//! States, transitions, trajectories, and the offline dataset.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::fmt;

/// An MDP state: either a real vector (continuous state spaces) or a small
/// integer code (finite state spaces). One tagged type lets the planning
/// oracle and the estimators share datasets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum State {
    Vector(SmallVec<[f64; 4]>),
    Code(u32),
}

impl State {
    pub fn vector(entries: impl Into<SmallVec<[f64; 4]>>) -> Self {
        State::Vector(entries.into())
    }

    pub fn code(c: u32) -> Self {
        State::Code(c)
    }

    pub fn as_ref(&self) -> StateRef<'_> {
        match self {
            State::Vector(v) => StateRef::Vector(v),
            State::Code(c) => StateRef::Code(*c),
        }
    }
}

/// Borrowed view of a state; the evaluation-path currency (cheap to copy,
/// never allocates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateRef<'a> {
    Vector(&'a [f64]),
    Code(u32),
}

impl StateRef<'_> {
    pub fn to_owned(self) -> State {
        match self {
            StateRef::Vector(v) => State::Vector(v.into()),
            StateRef::Code(c) => State::Code(c),
        }
    }
}

/// One step of a trajectory. `h` is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub h: usize,
    pub s: State,
    pub a: usize,
    pub r: f64,
    pub s_next: State,
}

/// An H-step trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Trajectory {
    pub steps: Vec<Transition>,
}

/// All trajectories collected at one site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct SiteData {
    pub trajectories: Vec<Trajectory>,
}

/// Per-site offline data. Sites are indexed 0..K-1 in collection order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct OfflineDataset {
    pub sites: Vec<SiteData>,
}

impl OfflineDataset {
    pub fn empty(sites: usize) -> Self {
        OfflineDataset {
            sites: vec![SiteData::default(); sites],
        }
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    /// Trajectory counts per site (the N_k).
    pub fn n_per_site(&self) -> Vec<usize> {
        self.sites.iter().map(|s| s.trajectories.len()).collect()
    }

    /// Transitions observed at step `h` (1-based) for site `k`, in
    /// trajectory order, with the trajectory index attached.
    pub fn step_transitions(&self, k: usize, h: usize) -> impl Iterator<Item = (usize, &Transition)> {
        self.sites[k]
            .trajectories
            .iter()
            .enumerate()
            .filter_map(move |(tau, traj)| traj.steps.get(h - 1).map(|t| (tau, t)))
    }
}

/// A dataset-invariant violation; data, not an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub site: usize,
    pub trajectory: usize,
    pub step: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(h) => write!(
                f,
                "site {} trajectory {} step {}: {}",
                self.site, self.trajectory, h, self.message
            ),
            None => write!(
                f,
                "site {} trajectory {}: {}",
                self.site, self.trajectory, self.message
            ),
        }
    }
}

/// Checks every dataset invariant against the environment shape `(H, A)`.
/// Returns an empty list iff the dataset is well formed.
pub fn validate_dataset(dataset: &OfflineDataset, horizon: usize, actions: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    for (k, site) in dataset.sites.iter().enumerate() {
        for (tau, traj) in site.trajectories.iter().enumerate() {
            if traj.steps.len() != horizon {
                out.push(Violation {
                    site: k,
                    trajectory: tau,
                    step: None,
                    message: format!(
                        "trajectory has {} steps, expected {horizon}",
                        traj.steps.len()
                    ),
                });
            }
            for (idx, t) in traj.steps.iter().enumerate() {
                if t.h != idx + 1 {
                    out.push(Violation {
                        site: k,
                        trajectory: tau,
                        step: Some(t.h),
                        message: format!("step index {} out of order (expected {})", t.h, idx + 1),
                    });
                }
                if t.a >= actions {
                    out.push(Violation {
                        site: k,
                        trajectory: tau,
                        step: Some(t.h),
                        message: format!("action {} out of range (|A| = {actions})", t.a),
                    });
                }
                if !(0.0..=1.0).contains(&t.r) || !t.r.is_finite() {
                    out.push(Violation {
                        site: k,
                        trajectory: tau,
                        step: Some(t.h),
                        message: format!("reward {} outside [0, 1]", t.r),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(h_count: usize) -> Trajectory {
        Trajectory {
            steps: (1..=h_count)
                .map(|h| Transition {
                    h,
                    s: State::code(0),
                    a: 0,
                    r: 0.5,
                    s_next: State::code(1),
                })
                .collect(),
        }
    }

    #[test]
    fn well_formed_dataset_has_no_violations() {
        let ds = OfflineDataset {
            sites: vec![SiteData {
                trajectories: vec![traj(3), traj(3)],
            }],
        };
        assert!(validate_dataset(&ds, 3, 2).is_empty());
    }

    #[test]
    fn flags_out_of_range_reward_with_location() {
        let mut ds = OfflineDataset {
            sites: vec![SiteData {
                trajectories: vec![traj(3)],
            }],
        };
        ds.sites[0].trajectories[0].steps[2].r = 1.5;
        let v = validate_dataset(&ds, 3, 2);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].site, v[0].trajectory, v[0].step), (0, 0, Some(3)));
    }

    #[test]
    fn flags_short_trajectory() {
        let ds = OfflineDataset {
            sites: vec![SiteData {
                trajectories: vec![traj(6)],
            }],
        };
        let v = validate_dataset(&ds, 7, 2);
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains("6 steps"));
    }
}
