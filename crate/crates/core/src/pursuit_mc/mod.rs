//! Monte Carlo for one Brownian prey chased by `n` Brownian predators on a line.
//!
//! Capture happens when the prey meets the foremost predator. The tail of the
//! capture time is compared with the cone-exit exponents.

mod fit;
mod ks;
mod simulate;
mod survival;

pub use fit::{fit_tail_exponent, ExponentFit, FitOptions};
pub use ks::{ks_two_sample, KsResult};
pub use simulate::{simulate, CaptureTimes, PursuitConfig};
pub use survival::{survival_curve, SurvivalCurve};

use crate::cone_spectra::{decay_exponent, double_cone_eigen, hat_t_table, tetra_cone_eigen, LAMBDA_T1};
use crate::error::{invalid, Result};

/// Best available estimate of the survival exponent with `n` predators.
///
/// `lambda_t2` is an estimate of `λ₁(T₂)`, used for `n = 3, 4`. For `n ≥ 5`
/// only the lower bound from the `T̂` table is known.
pub fn predicted_exponent(n: u32, lambda_t2: f64) -> Result<f64> {
    match n {
        0 => Err(invalid("need at least one predator")),
        1 => Ok(decay_exponent(1, 1.0)),
        2 => Ok(decay_exponent(2, double_cone_eigen(2, LAMBDA_T1).mu)),
        3 => Ok(decay_exponent(3, double_cone_eigen(3, lambda_t2).mu)),
        4 => Ok(decay_exponent(4, double_cone_eigen(4, tetra_cone_eigen(lambda_t2)?).mu)),
        _ => Ok(hat_t_table(n)?.last().map(|r| r.a_lower).unwrap_or(f64::NAN)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::erf::erf;

    #[test]
    fn predicted_values() {
        assert!((predicted_exponent(1, 5.159).unwrap() - 0.5).abs() < 1e-15);
        assert!((predicted_exponent(2, 5.159).unwrap() - 0.75).abs() < 1e-15);
        assert!((predicted_exponent(3, 5.159).unwrap() - 0.9128).abs() < 5e-4);
        assert!((predicted_exponent(4, 5.159).unwrap() - 1.0057).abs() < 5e-4);
        assert!(predicted_exponent(0, 5.159).is_err());
    }

    // One predator: the gap is a Brownian motion with variance 2t started at 1,
    // so P(τ > t) = erf(1/√(4t)).
    #[test]
    fn single_predator_matches_erf() {
        let mut c = PursuitConfig::new(1, 20_000, 11);
        c.t_max = 20.0;
        let curve = survival_curve(&simulate(&c).unwrap(), 10);
        for (i, &t) in curve.times.iter().enumerate().skip(1) {
            if t < 0.05 {
                continue;
            }
            let exact = erf(1.0 / (4.0 * t).sqrt());
            let tol = 4.0 * (exact * (1.0 - exact) / 20_000.0).sqrt() + 0.01;
            assert!((curve.survival[i] - exact).abs() < tol, "t={t} S={} exact={exact}", curve.survival[i]);
        }
    }

    #[test]
    fn bridge_removes_most_step_bias() {
        let run = |dt: f64, bridge: bool| {
            let mut c = PursuitConfig::new(1, 20_000, 5);
            c.t_max = 4.0;
            c.dt = dt;
            c.bridge = bridge;
            let s = simulate(&c).unwrap();
            1.0 - s.censored_count() as f64 / s.times.len() as f64
        };
        let exact = 1.0 - erf(1.0 / 16.0f64.sqrt());
        let plain = (run(0.05, false) - exact).abs();
        let bridged = (run(0.05, true) - exact).abs();
        assert!(bridged < 0.015, "{bridged}");
        assert!(plain > bridged, "{plain} {bridged}");
    }

    #[test]
    fn translation_invariance() {
        let mut a = PursuitConfig::new(2, 10_000, 21);
        a.t_max = 100.0;
        let mut b = a;
        b.seed = 22;
        b.offset = 5.0;
        let r = ks_two_sample(&simulate(&a).unwrap().times, &simulate(&b).unwrap().times);
        assert!(r.p_value > 0.01, "{r:?}");
    }

    #[test]
    fn brownian_scaling() {
        let mut a = PursuitConfig::new(2, 10_000, 31);
        a.t_max = 50.0;
        a.dt = 0.02;
        let mut b = a;
        b.seed = 32;
        b.x0 = 2.0;
        b.dt *= 4.0;
        b.t_max *= 4.0;
        let scaled: Vec<f64> = simulate(&b).unwrap().times.iter().map(|t| t / 4.0).collect();
        let r = ks_two_sample(&simulate(&a).unwrap().times, &scaled);
        assert!(r.p_value > 0.01, "{r:?}");
    }
}
