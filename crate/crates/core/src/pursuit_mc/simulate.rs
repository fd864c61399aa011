use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PursuitConfig {
    pub predators: u32,
    pub dt: f64,
    pub t_max: f64,
    pub paths: usize,
    pub seed: u64,
    /// Prey start; predators start at `offset`, the prey at `offset + x0`.
    pub x0: f64,
    pub offset: f64,
    /// Brownian-bridge correction for crossings inside a step.
    pub bridge: bool,
}

impl PursuitConfig {
    pub fn new(predators: u32, paths: usize, seed: u64) -> Self {
        PursuitConfig { predators, dt: 0.01, t_max: 1e3, paths, seed, x0: 1.0, offset: 0.0, bridge: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.predators == 0 {
            return Err(invalid("need at least one predator"));
        }
        if !(self.dt > 0.0 && self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(invalid("dt and t_max must be positive"));
        }
        if self.t_max / self.dt > 1e8 {
            return Err(invalid("t_max / dt exceeds 1e8 steps per path"));
        }
        if self.paths == 0 {
            return Err(invalid("paths must be positive"));
        }
        if !(self.x0 > 0.0) {
            return Err(invalid("prey must start strictly ahead"));
        }
        Ok(())
    }
}

/// Capture times; censored paths carry `t_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaptureTimes {
    pub times: Vec<f64>,
    pub censored: Vec<bool>,
    pub t_max: f64,
}

impl CaptureTimes {
    pub fn censored_count(&self) -> usize {
        self.censored.iter().filter(|&&c| c).count()
    }

    /// Mean of `min(τ, t_max)`.
    pub fn truncated_mean(&self) -> f64 {
        self.times.iter().sum::<f64>() / self.times.len() as f64
    }
}

/// Euler paths of prey and predators, one ChaCha stream per path.
pub fn simulate(config: &PursuitConfig) -> Result<CaptureTimes> {
    config.validate()?;
    let out: Vec<(f64, bool)> = (0..config.paths).into_par_iter().map(|p| one_path(config, p as u64)).collect();
    let (times, censored) = out.into_iter().unzip();
    Ok(CaptureTimes { times, censored, t_max: config.t_max })
}

fn one_path(c: &PursuitConfig, path: u64) -> (f64, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    rng.set_stream(path);
    let n = c.predators as usize;
    let sd = c.dt.sqrt();
    let steps = (c.t_max / c.dt).round() as u64;
    let mut prey = c.offset + c.x0;
    let mut pred = vec![c.offset; n];
    let mut gap_before = vec![c.x0; n];
    for step in 1..=steps {
        let z0: f64 = rng.sample(StandardNormal);
        prey += sd * z0;
        let mut escaped = 1.0;
        let mut caught = false;
        for j in 0..n {
            let zj: f64 = rng.sample(StandardNormal);
            pred[j] += sd * zj;
            let gap = prey - pred[j];
            if gap <= 0.0 {
                caught = true;
            } else if c.bridge {
                // The gap has variance 2 per unit time.
                escaped *= 1.0 - (-gap_before[j] * gap / c.dt).exp();
            }
            gap_before[j] = gap;
        }
        if !caught && c.bridge {
            let u: f64 = rng.random();
            caught = u >= escaped;
        }
        if caught {
            return (step as f64 * c.dt, false);
        }
    }
    (c.t_max, true)
}
