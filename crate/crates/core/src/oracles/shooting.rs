//! Radial shooting for the truncated-cone eigenvalue.
//!
//! `R'' = −(n−1) cot r R' − (μ − λ csc²r) R` from the regular behaviour
//! `R ~ sin^m r` near the vertex, and `μ` bisected on the sign of `R(r₀)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cone_spectra::{m_exponent, ConeSpec};
use crate::error::{invalid, Error, Result};

const START: f64 = 1e-6;
const MU_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingProblem {
    pub n: u32,
    pub lambda: f64,
    pub r0: f64,
    pub mu_bracket: (f64, f64),
    /// Largest RK4 step; steps shrink near `r = 0` and `r = π`.
    pub step: f64,
}

impl ShootingProblem {
    /// Bracket `(m + λ, 3m + λ + n)`, step `1e-5`.
    pub fn new(n: u32, lambda: f64, r0: f64) -> Result<Self> {
        ConeSpec::new(n, lambda, r0)?;
        let m = m_exponent(n, lambda);
        Ok(ShootingProblem { n, lambda, r0, mu_bracket: (m + lambda, 3.0 * m + lambda + n as f64), step: 1e-5 })
    }
}

/// Per-step coefficient table `(h, cot, csc²)` at `r`, `r + h/2`, `r + h`.
struct Mesh {
    steps: Vec<(f64, [f64; 3], [f64; 3])>,
}

impl Mesh {
    fn build(r0: f64, hmax: f64) -> Mesh {
        let mut steps = Vec::new();
        let mut r = START;
        while r < r0 {
            let h = hmax.min(0.05 * r).min(0.05 * (PI - r)).min(r0 - r);
            let rs = [r, r + 0.5 * h, r + h];
            let cot = rs.map(|x| 1.0 / x.tan());
            let csc2 = rs.map(|x| 1.0 / x.sin().powi(2));
            steps.push((h, cot, csc2));
            r += h;
            if h < 1e-15 {
                break;
            }
        }
        Mesh { steps }
    }
}

fn shoot(mesh: &Mesh, n: f64, lambda: f64, m: f64, mu: f64) -> f64 {
    let s = START.sin();
    let (mut y, mut dy) = (s.powf(m), m * s.powf(m - 1.0) * START.cos());
    let f = |cot: f64, csc2: f64, y: f64, dy: f64| -(n - 1.0) * cot * dy - (mu - lambda * csc2) * y;
    for &(h, cot, csc2) in &mesh.steps {
        let k1y = dy;
        let k1v = f(cot[0], csc2[0], y, dy);
        let k2y = dy + 0.5 * h * k1v;
        let k2v = f(cot[1], csc2[1], y + 0.5 * h * k1y, k2y);
        let k3y = dy + 0.5 * h * k2v;
        let k3v = f(cot[1], csc2[1], y + 0.5 * h * k2y, k3y);
        let k4y = dy + h * k3v;
        let k4v = f(cot[2], csc2[2], y + h * k3y, k4y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        // Only the sign at r₀ matters; keep the magnitude in range.
        let scale = y.abs().max(dy.abs());
        if scale > 1e100 {
            y /= scale;
            dy /= scale;
        }
    }
    y
}

/// First truncated-cone eigenvalue by shooting, to about `1e-9` in `μ`.
pub fn ode_shooting_eigen(p: &ShootingProblem) -> Result<f64> {
    ConeSpec::new(p.n, p.lambda, p.r0)?;
    if p.r0 >= PI {
        return Err(invalid("shooting needs r0 < pi"));
    }
    if !(p.step > 0.0 && p.step <= 1e-3) {
        return Err(invalid(format!("step = {} outside (0, 1e-3]", p.step)));
    }
    let (mut lo, mut hi) = p.mu_bracket;
    let m = m_exponent(p.n, p.lambda);
    let mesh = Mesh::build(p.r0, p.step);
    let n = p.n as f64;
    let at = |mu: f64| shoot(&mesh, n, p.lambda, m, mu);
    let (flo, fhi) = (at(lo), at(hi));
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { lo, hi, scan: vec![(lo, flo), (hi, fhi)] });
    }
    let sign_lo = flo.signum();
    while hi - lo > MU_TOL {
        let mid = 0.5 * (lo + hi);
        if at(mid).signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone_spectra::vertex_angle_delta;

    #[test]
    fn triangle_cone() {
        let mu = ode_shooting_eigen(&ShootingProblem::new(2, 2.25, vertex_angle_delta(2)).unwrap()).unwrap();
        assert!((mu - 5.00463581).abs() < 1e-5, "{mu}");
    }

    #[test]
    fn near_full_sphere() {
        let mu = ode_shooting_eigen(&ShootingProblem::new(2, 2.25, PI - 1e-4).unwrap()).unwrap();
        assert!((mu - 3.75).abs() < 1e-3, "{mu}");
    }

    #[test]
    fn tetrahedral_cone() {
        let mu = ode_shooting_eigen(&ShootingProblem::new(3, 5.102, vertex_angle_delta(3)).unwrap()).unwrap();
        assert!((mu - 8.00087815).abs() < 1e-5, "{mu}");
    }

    #[test]
    fn reports_missing_sign_change() {
        let mut p = ShootingProblem::new(2, 2.25, 2.0).unwrap();
        p.mu_bracket = (3.0, 3.5);
        assert!(matches!(ode_shooting_eigen(&p), Err(Error::NoSignChange { .. })));
    }
}
