//! Measure integrals <mu, V> and their shared Monte Carlo pools.
//!
//! Discrete factors integrate exactly. Beta-product factors are integrated
//! against a fixed pre-drawn sample pool per (site, step, coordinate); the
//! pools are generated once per environment and reused across all value
//! functions and all competing methods, so every comparison sees the same
//! random numbers.

use crate::error::{Error, Result};
use crate::model::{EnvSpec, MeasureFactor, StateRef};
use crate::planning::value::ValueFn;
use crate::rng::{rng_from, tags};
use rand::Rng;
use rand_distr::{Beta, Distribution};

/// One pool of continuous states, stored flat with stride `dim`.
#[derive(Debug, Clone)]
pub struct Pool {
    dim: usize,
    flat: Vec<f64>,
}

impl Pool {
    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.flat.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = StateRef<'_>> {
        self.flat.chunks_exact(self.dim).map(StateRef::Vector)
    }
}

/// Pre-drawn sample pools for every continuous measure factor of an
/// environment, keyed by (site, step, coordinate).
pub struct MeasureIntegralCache {
    sites: usize,
    horizon: usize,
    dim: usize,
    mc_samples: usize,
    seed: u64,
    pools: Vec<Option<Pool>>,
}

impl MeasureIntegralCache {
    /// Draws `mc_samples` states per Beta-product factor, each pool from its
    /// own derived stream so the layout is schedule-independent.
    pub fn build(env: &EnvSpec, mc_samples: usize, seed: u64) -> Result<Self> {
        let (sites, horizon, dim) = (env.sites, env.horizon, env.dim());
        let mut pools = Vec::with_capacity(sites * horizon * dim);
        for k in 0..sites {
            for h in 0..horizon {
                for i in 0..dim {
                    pools.push(match &env.mu[k][h][i] {
                        MeasureFactor::Discrete { .. } => None,
                        MeasureFactor::BetaProduct { alpha, beta } => Some(draw_pool(
                            alpha,
                            beta,
                            mc_samples,
                            seed,
                            &[tags::INTEGRAL_POOL, k as u64, h as u64 + 1, i as u64],
                        )?),
                    });
                }
            }
        }
        Ok(MeasureIntegralCache {
            sites,
            horizon,
            dim,
            mc_samples,
            seed,
            pools,
        })
    }

    pub fn mc_samples(&self) -> usize {
        self.mc_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Pool for (site k, 1-based step h, coordinate i); None for discrete
    /// factors.
    pub fn pool(&self, k: usize, h: usize, i: usize) -> Option<&Pool> {
        debug_assert!(k < self.sites && h >= 1 && h <= self.horizon && i < self.dim);
        self.pools[(k * self.horizon + (h - 1)) * self.dim + i].as_ref()
    }
}

fn draw_pool(alpha: &[f64], beta: &[f64], n: usize, seed: u64, tag: &[u64]) -> Result<Pool> {
    let dim = alpha.len();
    let mut rng = rng_from(seed, tag);
    let dists: Vec<Beta<f64>> = alpha
        .iter()
        .zip(beta)
        .map(|(&a, &b)| {
            Beta::new(a, b).map_err(|e| Error::config(format!("beta({a}, {b}): {e}")))
        })
        .collect::<Result<_>>()?;
    let mut flat = Vec::with_capacity(n * dim);
    for _ in 0..n {
        for dist in &dists {
            flat.push(dist.sample(&mut rng));
        }
    }
    Ok(Pool { dim, flat })
}

/// <mu, V>: exact weighted sum for discrete factors, pool average for
/// Beta-product factors. A continuous factor with no pool is a
/// configuration error.
pub fn integrate_mu_v(factor: &MeasureFactor, v: &dyn ValueFn, pool: Option<&Pool>) -> Result<f64> {
    match factor {
        MeasureFactor::Discrete { support, probs } => Ok(support
            .iter()
            .zip(probs)
            .map(|(s, p)| p * v.value(s.as_ref()))
            .sum()),
        MeasureFactor::BetaProduct { .. } => {
            let pool = pool.ok_or_else(|| {
                Error::config("continuous measure factor has no integral pool".to_string())
            })?;
            let mut acc = 0.0;
            for s in pool.states() {
                acc += v.value(s);
            }
            Ok(acc / pool.len() as f64)
        }
    }
}

/// Draws one next state from `factor` using `rng`'s stream.
pub fn sample_factor<R: Rng>(factor: &MeasureFactor, rng: &mut R) -> Result<crate::model::State> {
    match factor {
        MeasureFactor::Discrete { support, probs } => {
            let u: f64 = rng.random();
            let mut cum = 0.0;
            for (s, p) in support.iter().zip(probs) {
                cum += p;
                if u < cum {
                    return Ok(s.clone());
                }
            }
            Ok(support
                .last()
                .ok_or_else(|| Error::config("empty discrete support".to_string()))?
                .clone())
        }
        MeasureFactor::BetaProduct { alpha, beta } => {
            let mut v = smallvec::SmallVec::<[f64; 4]>::with_capacity(alpha.len());
            for (&a, &b) in alpha.iter().zip(beta) {
                let dist =
                    Beta::new(a, b).map_err(|e| Error::config(format!("beta({a}, {b}): {e}")))?;
                v.push(dist.sample(rng));
            }
            Ok(crate::model::State::Vector(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::State;
    use crate::planning::value::ZeroValue;

    #[test]
    fn discrete_integral_is_weighted_sum() {
        let factor = MeasureFactor::Discrete {
            support: vec![State::code(1), State::code(2)],
            probs: vec![0.6, 0.4],
        };
        let v = |s: StateRef<'_>| match s {
            StateRef::Code(1) => 1.0,
            _ => 0.0,
        };
        asserty(integrate_mu_v(&factor, &v, None).unwrap(), 0.6);
    }

    #[test]
    fn zero_and_unit_value_integrals() {
        let factor = MeasureFactor::Discrete {
            support: vec![State::code(0), State::code(1)],
            probs: vec![0.5, 0.5],
        };
        assert_eq!(integrate_mu_v(&factor, &ZeroValue, None).unwrap(), 0.0);
        let one = |_: StateRef<'_>| 1.0;
        assert y2(integrate_mu_v(&factor, &one, None).unwrap());
    }

    fn assert_y2(x: f64) {
        assert!((x - 1.0).abs() < 1e-15);
    }

    fn asserty(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn continuous_factor_without_pool_is_config_error() {
        let factor = MeasureFactor::BetaProduct {
            alpha: vec![2.0],
            beta: vec![2.0],
        };
        assert!(integrate_mu_v(&factor, &ZeroValue, None).is_err());
    }

    #[test]
    fn unit_value_over_pool_is_one() {
        let pool = draw_pool(&[2.0, 3.0], &[2.0, 2.0], 64, 9, &[1]).unwrap();
        let factor = MeasureFactor::BetaProduct {
            alpha: vec![2.0, 3.0],
            beta: vec![2.0, 2.0],
        };
        let one = |_: StateRef<'_>| 1.0;
        let got = integrate_mu_v(&factor, &one, Some(&pool)).unwrap();
        assert!((got - 1.0).abs() < 1e-12);
    }
}
