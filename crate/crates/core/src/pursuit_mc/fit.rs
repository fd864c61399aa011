use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::SurvivalCurve;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub a_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Defaults to `[t_max/100, t_max/3]`.
    pub window: Option<(f64, f64)>,
    pub bootstrap: usize,
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { window: None, bootstrap: 200, seed: 0x5eed }
    }
}

const MIN_POINTS: usize = 10;
const MAX_REL_ERR: f64 = 0.2;

/// Least-squares slope of `(ln t, ln S)`; returns `(slope, r²)`.
fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, r2)
}

/// `a` in `S(t) ≈ c·t^{−a}` over the window, with a 95% bootstrap interval.
///
/// The bootstrap resamples paths; since the fit only sees the grid counts this
/// is a multinomial draw over the between-grid-point bins.
pub fn fit_tail_exponent(curve: &SurvivalCurve, opts: &FitOptions) -> Result<ExponentFit> {
    let t_max = *curve.times.last().ok_or_else(|| invalid("empty survival curve"))?;
    let window = opts.window.unwrap_or((t_max / 100.0, t_max / 3.0));
    if !(window.0 > 0.0 && window.1 > window.0) {
        return Err(invalid(format!("bad window {window:?}")));
    }
    let idx: Vec<usize> = (0..curve.times.len())
        .filter(|&i| {
            let t = curve.times[i];
            let s = curve.survival[i];
            t >= window.0 && t <= window.1 && s > 0.0 && curve.stderr[i] / s < MAX_REL_ERR
        })
        .collect();
    if idx.len() < MIN_POINTS {
        return Err(Error::InsufficientTail(format!(
            "{} usable grid points in [{}, {}], need {MIN_POINTS}",
            idx.len(),
            window.0,
            window.1
        )));
    }
    let xs: Vec<f64> = idx.iter().map(|&i| curve.times[i].ln()).collect();
    let ys: Vec<f64> = idx.iter().map(|&i| curve.survival[i].ln()).collect();
    let (slope, r_squared) = ols(&xs, &ys);
    let a_hat = -slope;

    let mut boot = Vec::with_capacity(opts.bootstrap);
    if opts.bootstrap > 0 {
        // Bin g holds paths alive at idx[g] but not at idx[g+1]; the last bin
        // holds survivors of the window, bin "before" those dead by idx[0].
        let mut bins: Vec<u64> = Vec::with_capacity(idx.len() + 1);
        bins.push((curve.paths - curve.at_risk[idx[0]]) as u64);
        for w in idx.windows(2) {
            bins.push((curve.at_risk[w[0]] - curve.at_risk[w[1]]) as u64);
        }
        bins.push(curve.at_risk[*idx.last().unwrap()] as u64);
        let total = curve.paths as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.bootstrap {
            let mut left = total;
            let mut mass_left = total;
            let mut draw = Vec::with_capacity(bins.len());
            for &b in &bins {
                let k = if mass_left == 0 || left == 0 {
                    0
                } else if b == mass_left {
                    left
                } else {
                    Binomial::new(left, b as f64 / mass_left as f64).map(|d| d.sample(&mut rng)).unwrap_or(0)
                };
                draw.push(k);
                left -= k;
                mass_left -= b;
            }
            let mut alive = total - draw[0];
            let (mut bx, mut by) = (Vec::new(), Vec::new());
            for (g, x) in xs.iter().enumerate() {
                if alive > 0 {
                    bx.push(*x);
                    by.push((alive as f64 / total as f64).ln());
                }
                alive -= draw[g + 1];
            }
            if bx.len() >= 2 {
                boot.push(-ols(&bx, &by).0);
            }
        }
    }
    boot.sort_by(f64::total_cmp);
    let (ci_low, ci_high) = if boot.is_empty() {
        (a_hat, a_hat)
    } else {
        let q = |p: f64| boot[((p * (boot.len() - 1) as f64).round() as usize).min(boot.len() - 1)];
        (q(0.025).min(a_hat), q(0.975).max(a_hat))
    };
    Ok(ExponentFit { a_hat, ci_low, ci_high, window, r_squared, points: idx.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pursuit_mc::{survival_curve, CaptureTimes};
    use rand::Rng;

    fn pareto(a: f64, n: usize, t_max: f64, seed: u64) -> CaptureTimes {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut times = Vec::with_capacity(n);
        let mut censored = Vec::with_capacity(n);
        for _ in 0..n {
            let u: f64 = rng.random();
            let t = (1.0 - u).powf(-1.0 / a);
            times.push(t.min(t_max));
            censored.push(t >= t_max);
        }
        CaptureTimes { times, censored, t_max }
    }

    #[test]
    fn recovers_synthetic_power_law() {
        let curve = survival_curve(&pareto(0.9, 200_000, 1e3, 4), 40);
        let fit = fit_tail_exponent(&curve, &FitOptions::default()).unwrap();
        assert!((fit.a_hat - 0.9).abs() < 0.02, "{fit:?}");
        assert!(fit.ci_low <= fit.a_hat && fit.a_hat <= fit.ci_high);
        assert!(fit.ci_high - fit.ci_low < 0.1);
        assert!(fit.r_squared > 0.99);
    }

    #[test]
    fn too_little_tail() {
        let curve = survival_curve(&pareto(3.0, 200, 1e3, 4), 40);
        assert!(matches!(fit_tail_exponent(&curve, &FitOptions::default()), Err(Error::InsufficientTail(_))));
    }
}
