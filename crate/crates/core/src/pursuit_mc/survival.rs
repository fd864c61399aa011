use serde::{Deserialize, Serialize};

use super::CaptureTimes;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalCurve {
    /// `0` followed by a geometric grid ending at `t_max`.
    pub times: Vec<f64>,
    pub survival: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Paths with `τ > t` at each grid time.
    pub at_risk: Vec<usize>,
    pub censored: usize,
    pub paths: usize,
}

/// Empirical `P(τ > t)` on `points_per_decade` geometric points over four
/// decades below `t_max`. Censored paths count as surviving through `t_max`.
pub fn survival_curve(samples: &CaptureTimes, points_per_decade: usize) -> SurvivalCurve {
    let t_max = samples.t_max;
    let decades = 4;
    let total = decades * points_per_decade.max(1);
    let mut times = vec![0.0];
    times.extend((0..=total).map(|i| t_max * 10f64.powf(-(decades as f64) + i as f64 / points_per_decade.max(1) as f64)));
    *times.last_mut().unwrap() = t_max;

    let mut captured: Vec<f64> =
        samples.times.iter().zip(&samples.censored).filter(|(_, &c)| !c).map(|(&t, _)| t).collect();
    captured.sort_by(f64::total_cmp);
    let paths = samples.times.len();
    let at_risk: Vec<usize> = times.iter().map(|&t| paths - captured.partition_point(|&c| c <= t)).collect();
    let nf = paths.max(1) as f64;
    let survival: Vec<f64> = at_risk.iter().map(|&k| k as f64 / nf).collect();
    let stderr = survival.iter().map(|&s| (s * (1.0 - s) / nf).sqrt()).collect();
    SurvivalCurve { times, survival, stderr, at_risk, censored: samples.censored_count(), paths }
}
