//! Gauss hypergeometric function `2F1(α, β; γ; z)` on `0 ≤ z < 1`.
//!
//! Every eigenvalue relation for truncated spherical cones reduces to the sign of
//! a `2F1` value, so this module is the numerical floor of the crate. The
//! function is the standard Gauss series
//!
//! ```text
//! 2F1(α, β; γ; z) = Σ_k (α)_k (β)_k / ((γ)_k k!) z^k
//! ```
//!
//! which solves `z(1-z)y'' + [γ - (α+β+1)z]y' - αβ y = 0`. A printed variant of
//! the series with `(β)_k` in the denominator and no `k!` circulates in the
//! literature on cone eigenvalues; it does not solve that ODE and is not used.
//!
//! For `z ≤ 0.9` the series is summed directly with compensated summation and a
//! geometric tail bound. Above that the `z → 1 - z` connection formula (DLMF
//! 15.8.4) is used whenever `γ - α - β` is not within `1e-4` of an integer, which
//! keeps the term count small even a hair below `z = 1`.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{invalid, Error, Result};

/// Switch-over point between direct summation and the `1 - z` connection formula.
const CONNECTION_THRESHOLD: f64 = 0.9;
/// Minimum distance of `γ - α - β` from an integer for the connection formula.
const DEGENERACY_GAP: f64 = 1e-4;

/// Parameters of one `2F1` evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub z: f64,
}

impl HyperParams {
    /// Validated constructor: `γ` not a non-positive integer, `z ∈ [0, 1)`.
    pub fn new(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<Self> {
        let p = HyperParams { alpha, beta, gamma, z };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite() && self.gamma.is_finite()) {
            return Err(invalid("hypergeometric parameters must be finite"));
        }
        if is_non_positive_integer(self.gamma) {
            return Err(invalid(format!(
                "gamma = {} is a non-positive integer",
                self.gamma
            )));
        }
        if !(self.z >= 0.0 && self.z < 1.0) {
            return Err(invalid(format!("z = {} outside [0, 1)", self.z)));
        }
        Ok(())
    }
}

/// Stopping rule for the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Absolute bound on the neglected tail.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { tol: 1e-13, max_terms: 10_000 }
    }
}

/// `2F1(α, β; γ; z)` with the default tolerance (`1e-13` absolute, 10 000 terms).
pub fn gauss_2f1(p: &HyperParams) -> Result<f64> {
    gauss_2f1_with(p, SeriesOptions::default())
}

pub fn gauss_2f1_with(p: &HyperParams, opts: SeriesOptions) -> Result<f64> {
    p.validate()?;
    let HyperParams { alpha, beta, gamma: c, z } = *p;
    if z == 0.0 {
        return Ok(1.0);
    }
    let s = c - alpha - beta;
    if z > CONNECTION_THRESHOLD && (s - s.round()).abs() > DEGENERACY_GAP {
        return connection_one_minus_z(alpha, beta, c, z, opts);
    }
    direct_series(alpha, beta, c, z, opts)
}

/// Terms `(α)_k (β)_k / ((γ)_k k!) z^k` of the Gauss series, starting at `k = 0`.
pub fn series_terms(alpha: f64, beta: f64, gamma: f64, z: f64) -> impl Iterator<Item = f64> {
    let mut term = 1.0;
    let mut k = 0.0_f64;
    std::iter::from_fn(move || {
        let out = term;
        term *= (alpha + k) * (beta + k) / ((gamma + k) * (k + 1.0)) * z;
        k += 1.0;
        Some(out)
    })
}

/// Plain Gauss series with Neumaier summation.
///
/// Terminates once the index is past every sign change of the Pochhammer factors
/// and the geometric tail bound `|t| q / (1 - q)` falls below `opts.tol`, where
/// `q` is the larger of the current term ratio and `z`.
pub fn direct_series(alpha: f64, beta: f64, gamma: f64, z: f64, opts: SeriesOptions) -> Result<f64> {
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut term = 1.0;
    // Past this index all of (α+k), (β+k), (γ+k) are positive and the ratio is monotone.
    let settle = alpha.abs().max(beta.abs()).max(gamma.abs()) + 2.0;
    for k in 0..opts.max_terms {
        let kf = k as f64;
        let ratio = (alpha + kf) * (beta + kf) / ((gamma + kf) * (kf + 1.0)) * z;
        term *= ratio;
        if term == 0.0 {
            // Terminating series: α or β is a non-positive integer.
            return Ok(sum + comp);
        }
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;

        if kf + 1.0 > settle {
            let next = kf + 1.0;
            let q = ((alpha + next) * (beta + next) / ((gamma + next) * (next + 1.0)) * z)
                .abs()
                .max(z);
            if q < 1.0 && term.abs() * q / (1.0 - q) <= opts.tol {
                return Ok(sum + comp);
            }
        }
    }
    Err(Error::SeriesNonConvergence {
        partial_sum: sum + comp,
        terms: opts.max_terms,
    })
}

/// DLMF 15.8.4 with `s = γ - α - β` non-integer.
fn connection_one_minus_z(a: f64, b: f64, c: f64, z: f64, opts: SeriesOptions) -> Result<f64> {
    let s = c - a - b;
    let w = 1.0 - z;
    let gc = gamma(c);
    let mut value = 0.0;

    let coef1 = gc * gamma(s) * recip_gamma(c - a) * recip_gamma(c - b);
    if coef1 != 0.0 {
        value += coef1 * direct_series(a, b, 1.0 - s, w, opts)?;
    }
    let coef2 = gc * gamma(-s) * recip_gamma(a) * recip_gamma(b);
    if coef2 != 0.0 {
        value += coef2 * w.powf(s) * direct_series(c - a, c - b, 1.0 + s, w, opts)?;
    }
    Ok(value)
}

fn recip_gamma(x: f64) -> f64 {
    if is_non_positive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-14
}
