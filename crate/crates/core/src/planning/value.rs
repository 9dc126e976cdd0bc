//! Value-function and policy abstractions.
//!
//! Value functions are carried as closed-form descriptors (weight vectors
//! plus a feature map), never as state grids: continuous states make
//! tabulation impossible, and the linear representation keeps every
//! evaluation exact given the weights.

use crate::model::{FeatureMap, StateRef};

/// A state-value function V: S -> R, evaluated pointwise.
pub trait ValueFn: Sync {
    fn value(&self, s: StateRef<'_>) -> f64;
}

impl<F: Fn(StateRef<'_>) -> f64 + Sync> ValueFn for F {
    fn value(&self, s: StateRef<'_>) -> f64 {
        self(s)
    }
}

/// The identically-zero value function (terminal boundary V_{H+1}).
pub struct ZeroValue;

impl ValueFn for ZeroValue {
    fn value(&self, _: StateRef<'_>) -> f64 {
        0.0
    }
}

/// A deterministic Markov policy over the horizon; `h` is 1-based.
pub trait Policy: Sync {
    fn act(&self, h: usize, s: StateRef<'_>) -> usize;
}

/// Policy from a closure, mostly for tests and injected references.
pub struct FnPolicy<F>(pub F);

impl<F: Fn(usize, StateRef<'_>) -> usize + Sync> Policy for FnPolicy<F> {
    fn act(&self, h: usize, s: StateRef<'_>) -> usize {
        (self.0)(h, s)
    }
}

/// Greedy argmax over `phi(s, a)^T w`, lowest action index on ties.
pub fn greedy_linear(fm: &FeatureMap, w: &[f64], s: StateRef<'_>) -> (usize, f64) {
    let mut best_a = 0;
    let mut best_q = f64::NEG_INFINITY;
    for a in 0..fm.actions() {
        let q = fm.dot(s, a, w);
        if q > best_q {
            best_q = q;
            best_a = a;
        }
    }
    (best_a, best_q)
}
