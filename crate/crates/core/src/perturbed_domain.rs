//! The nodal domain `G₂ ⊃ T₂` on `S²` and the check that it contains `T₂`.
//!
//! Coordinates are polar about a vertex of the spherical triangle `T₂`: `r` is
//! the geodesic distance from the vertex and `θ ∈ [0, 2π/3]` the angle between
//! the two sides through it. The third side is a great-circle arc whose
//! stereographic image `ρ = tan(r/2)` is `ρ = β(θ)`.
//!
//! `Φ_G = sin^{3/2}r u₁(r) sin(3θ/2) − c sin^{9/2}r u₃(r) sin(9θ/2)` is a
//! Dirichlet eigenfunction of the lune with eigenvalue `μ`. Its nodal domain
//! through the vertex is `G₂`; if `Φ_G > 0` on `T₂`'s third side then
//! `T₂ ⊂ G₂` and `λ₁(T₂) ≥ μ`.

use std::f64::consts::{FRAC_PI_3, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hyperfun::{gauss_2f1_with, HyperParams, SeriesOptions};

/// Angular opening of the lune containing `T₂`.
pub const LUNE_ANGLE: f64 = 2.0 * PI / 3.0;

/// Spot checks along the arc, `θ ∈ {0, 1/2, 2/3, 2π/9, π/3}`.
pub const CHECKPOINTS: [f64; 5] = [0.0, 0.5, 2.0 / 3.0, 2.0 * PI / 9.0, FRAC_PI_3];

const FINE_GRID: usize = 4000;
const STALL_STEP: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalDomainSpec {
    pub mu: f64,
    pub c: f64,
    /// Angular mode indices of the two terms; only `[1, 3]` is supported.
    pub modes: Vec<u32>,
}

impl Default for NodalDomainSpec {
    fn default() -> Self {
        NodalDomainSpec { mu: 5.102, c: 0.0003, modes: vec![1, 3] }
    }
}

impl NodalDomainSpec {
    pub fn with_c(c: f64) -> Self {
        NodalDomainSpec { c, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modes != [1, 3] {
            return Err(invalid(format!("modes {:?} unsupported; expected [1, 3]", self.modes)));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(invalid(format!("mu = {} must be positive", self.mu)));
        }
        if !self.c.is_finite() {
            return Err(invalid("c must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentCertificate {
    /// `(θ, H)` at the fixed spot checks.
    pub checkpoints: Vec<(f64, f64)>,
    /// `(θ_lo, θ_hi, lower bound of H on the interval)`.
    pub intervals: Vec<(f64, f64, f64)>,
    /// Sampled `sup |dh/dθ|` along the arc, before the safety factor.
    pub derivative_bound: f64,
    pub safety: f64,
    pub passed: bool,
    /// Where the march stopped, if it did not reach `π/3`.
    pub failure_theta: Option<f64>,
    pub method: String,
}

fn tight() -> SeriesOptions {
    SeriesOptions { tol: 1e-16, ..SeriesOptions::default() }
}

/// `u_l(r) = 2F1(3l/2 + 1/2 ± √(1/4 + μ); 1 + 3l/2; (1 − cos r)/2)`.
pub fn radial_mode_u(l: u32, mu: f64, r: f64) -> Result<f64> {
    if l == 0 {
        return Err(invalid("mode index l must be positive"));
    }
    if !(0.0..PI).contains(&r) {
        return Err(invalid(format!("r = {r} outside [0, pi)")));
    }
    let lf = 1.5 * l as f64;
    let s = (0.25 + mu).sqrt();
    let z = (0.5 * r).sin().powi(2);
    gauss_2f1_with(&HyperParams::new(lf + 0.5 + s, lf + 0.5 - s, 1.0 + lf, z)?, tight())
}

/// `sin(9θ/2) / sin(3θ/2)` written as a polynomial so it is defined at the
/// sector edges.
fn angular_ratio(theta: f64) -> f64 {
    3.0 - 4.0 * (1.5 * theta).sin().powi(2)
}

fn check_sector(r: f64, theta: f64) -> Result<()> {
    if !(0.0..PI).contains(&r) {
        return Err(invalid(format!("r = {r} outside [0, pi)")));
    }
    if !(-1e-12..=LUNE_ANGLE + 1e-12).contains(&theta) {
        return Err(invalid(format!("theta = {theta} outside [0, 2pi/3]")));
    }
    Ok(())
}

pub fn g2_eigenfunction(spec: &NodalDomainSpec, r: f64, theta: f64) -> Result<f64> {
    check_sector(r, theta)?;
    let s = r.sin();
    let u1 = radial_mode_u(1, spec.mu, r)?;
    let u3 = radial_mode_u(3, spec.mu, r)?;
    Ok(s.powf(1.5) * u1 * (1.5 * theta).sin() - spec.c * s.powf(4.5) * u3 * (4.5 * theta).sin())
}

/// `Φ_G / (sin^{3/2} r · sin(3θ/2))`, smooth up to the sector edges.
pub fn h_function(spec: &NodalDomainSpec, r: f64, theta: f64) -> Result<f64> {
    check_sector(r, theta)?;
    let u1 = radial_mode_u(1, spec.mu, r)?;
    let u3 = radial_mode_u(3, spec.mu, r)?;
    Ok(u1 - spec.c * r.sin().powi(3) * u3 * angular_ratio(theta))
}

/// Stereographic radius `ρ = β(θ)` of the third side of `T₂`.
pub fn t2_boundary_beta(theta: f64) -> f64 {
    let cs = (theta - FRAC_PI_3).cos();
    let r2 = 2f64.sqrt();
    0.5 * (r2 * cs + (2.0 * cs * cs + 4.0).sqrt())
}

/// Geodesic radius `2·atan β(θ)` of the third side.
pub fn t2_boundary_radius(theta: f64) -> f64 {
    2.0 * t2_boundary_beta(theta).atan()
}

pub fn stereo(r: f64) -> Result<f64> {
    if !(0.0..PI).contains(&r) {
        return Err(invalid(format!("r = {r} outside [0, pi)")));
    }
    Ok((0.5 * r).tan())
}

pub fn stereo_inv(rho: f64) -> f64 {
    2.0 * rho.atan()
}

/// Unit vector of the point at polar coordinates `(r, θ)` about the vertex.
pub fn polar_to_unit(r: f64, theta: f64) -> [f64; 3] {
    [r.sin() * theta.cos(), r.sin() * theta.sin(), r.cos()]
}

/// `h(θ) = H(2·atan β(θ), θ)`.
pub fn arc_h(spec: &NodalDomainSpec, theta: f64) -> Result<f64> {
    h_function(spec, t2_boundary_radius(theta), theta)
}

/// Marches `θ` from `0` to `π/3` along the third side of `T₂` with steps
/// `h(θ₀)/M`, `M = safety · sup|h′|`, so that `h > 0` on every step.
///
/// The derivative bound is sampled, not proved: this is a floating-point check.
pub fn verify_containment(spec: &NodalDomainSpec, safety: f64) -> Result<ContainmentCertificate> {
    spec.validate()?;
    if !(safety >= 1.0 && safety.is_finite()) {
        return Err(invalid(format!("safety = {safety} must be >= 1")));
    }
    let checkpoints = CHECKPOINTS
        .iter()
        .map(|&t| arc_h(spec, t).map(|h| (t, h)))
        .collect::<Result<Vec<_>>>()?;

    let fd = 1e-6;
    let mut d = 0.0f64;
    for i in 0..=FINE_GRID {
        let t = FRAC_PI_3 * i as f64 / FINE_GRID as f64;
        let (a, b) = ((t - fd).max(0.0), (t + fd).min(FRAC_PI_3));
        d = d.max(((arc_h(spec, b)? - arc_h(spec, a)?) / (b - a)).abs());
    }
    let bound = safety * d;

    let mut intervals = Vec::new();
    let mut theta = 0.0;
    let mut failure = None;
    while theta < FRAC_PI_3 {
        let h = arc_h(spec, theta)?;
        let step = if bound > 0.0 { h / bound } else { f64::INFINITY };
        if h <= 0.0 || step < STALL_STEP {
            failure = Some(theta);
            break;
        }
        let next = (theta + step).min(FRAC_PI_3);
        intervals.push((theta, next, h - d * (next - theta)));
        theta = next;
    }
    let passed = failure.is_none()
        && checkpoints.iter().all(|&(_, h)| h > 0.0)
        && intervals.iter().all(|iv| iv.2 > 0.0);
    Ok(ContainmentCertificate {
        checkpoints,
        intervals,
        derivative_bound: d,
        safety,
        passed,
        failure_theta: failure,
        method: "floating-point march with sampled derivative bound; not interval arithmetic".into(),
    })
}

/// `max |Δ_{S²}Φ + μ_eval Φ|` over `samples` interior points, five-point
/// stencil of step `h` in `(r, θ)`.
pub fn laplacian_residual(spec: &NodalDomainSpec, mu_eval: f64, samples: usize, h: f64) -> Result<f64> {
    spec.validate()?;
    if samples == 0 {
        return Err(invalid("samples must be positive"));
    }
    if !(h > 1e-5 && h < 1e-2) {
        return Err(invalid(format!("h = {h} outside (1e-5, 1e-2)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6732);
    let phi = |r: f64, t: f64| g2_eigenfunction(spec, r, t);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let r: f64 = rng.random_range(0.3..2.2);
        let t: f64 = rng.random_range(0.1..LUNE_ANGLE - 0.1);
        let c = phi(r, t)?;
        let rr = (phi(r + h, t)? - 2.0 * c + phi(r - h, t)?) / (h * h);
        let dr = (phi(r + h, t)? - phi(r - h, t)?) / (2.0 * h);
        let tt = (phi(r, t + h)? - 2.0 * c + phi(r, t - h)?) / (h * h);
        let lap = rr + dr / r.tan() + tt / r.sin().powi(2);
        worst = worst.max((lap + mu_eval * c).abs());
    }
    Ok(worst)
}

/// Residual of `Φ_G` against its own eigenvalue.
pub fn eigen_residual_check(spec: &NodalDomainSpec, samples: usize, h: f64) -> Result<f64> {
    laplacian_residual(spec, spec.mu, samples, h)
}
