//! `λ₁(T₂)` by sinc collocation of an integral equation on a half-strip.
//!
//! `T₂` is cut into six congruent right triangles; on one of them the first
//! eigenfunction is Dirichlet on the edge inside `∂T₂` and Neumann on the two
//! symmetry edges. A Schwarz triangle map pulls this triangle back to
//! `D = {0 < Re z < π/2, Im z > 0}`, where the eigenproblem becomes
//! `u/λ = −∫_D G(z, ζ) Ψ(ζ) u(ζ) dA` with the conformal weight `Ψ` and the
//! mixed-boundary Green's function `G`. Collocating the tensor sinc basis at
//! the sinc points gives a dense matrix whose leading eigenvalue `μ_m`
//! approximates `1/λ`.

mod assemble;
mod basis;
mod conformal;
mod eigen;
mod greens;
mod quadrature;

pub use assemble::assemble_matrix;
pub use basis::{basis_alpha, basis_beta, cardinal_sinc};
pub use conformal::{conformal_weight, schwarz_map};
pub use eigen::{leading_eigen, leading_eigen_with, EigenEstimate};
pub use greens::greens_function;
pub use quadrature::{sinc_quadrature, SincMap, SincRule};

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Point of the closed half-strip `0 ≤ Re z ≤ π/2`, `Im z ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripPoint {
    pub re: f64,
    pub im: f64,
}

impl StripPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !((0.0..=FRAC_PI_2).contains(&re) && im >= 0.0 && im.is_finite()) {
            return Err(invalid(format!("({re}, {im}) outside the half-strip")));
        }
        Ok(StripPoint { re, im })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SincDiscretization {
    /// Basis indices run over `−n, …, n` plus the boundary index `n + 1`.
    pub n: usize,
    pub h: f64,
    /// Quadrature nodes `ι ∈ {−N−1, …, N}` per axis and subregion.
    pub quad_nodes: usize,
    pub quad_step: f64,
    /// `x_l` for `l = −n..=n`, then `π/2`.
    pub x_points: Vec<f64>,
    /// `y_l` for `l = −n..=n`, then `0`.
    pub y_points: Vec<f64>,
    pub dim: usize,
}

impl SincDiscretization {
    /// `h = π/√(n+1)`, `N = n`, quadrature step `h`.
    pub fn new(n: usize) -> Self {
        let h = PI / ((n + 1) as f64).sqrt();
        Self::with_options(n, h, n, h)
    }

    pub fn with_options(n: usize, h: f64, quad_nodes: usize, quad_step: f64) -> Self {
        let ni = n as i64;
        let mut x_points: Vec<f64> = (-ni..=ni)
            .map(|l| {
                let e = (h * l as f64).exp();
                FRAC_PI_2 * e / (1.0 + e)
            })
            .collect();
        x_points.push(FRAC_PI_2);
        let mut y_points: Vec<f64> = (-ni..=ni).map(|l| (h * l as f64).exp().asinh()).collect();
        y_points.push(0.0);
        SincDiscretization { n, h, quad_nodes, quad_step, x_points, y_points, dim: (2 * n + 2).pow(2) }
    }

    /// Discretisation with `dim = (2n + 2)²`.
    pub fn for_dim(dim: usize) -> Result<Self> {
        let side = (dim as f64).sqrt().round() as usize;
        if side * side != dim || side < 2 || !side.is_multiple_of(2) {
            return Err(invalid(format!("dim = {dim} is not of the form (2n + 2)^2")));
        }
        Ok(Self::new(side / 2 - 1))
    }

    pub fn indices(&self) -> Vec<i64> {
        let n = self.n as i64;
        (-n..=n + 1).collect()
    }

    pub fn x_at(&self, l: i64) -> f64 {
        self.x_points[(l + self.n as i64) as usize]
    }

    pub fn y_at(&self, l: i64) -> f64 {
        self.y_points[(l + self.n as i64) as usize]
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.quad_step > 0.0) {
            return Err(invalid("sinc steps must be positive"));
        }
        if self.x_points.len() != 2 * self.n + 2 || self.y_points.len() != 2 * self.n + 2 {
            return Err(invalid("point lists do not match n"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub dim: usize,
    pub h: f64,
    pub lambda: f64,
    pub mu_m: f64,
    pub iterations: usize,
}

/// Assembles and solves at each dimension `(2n + 2)²` in `dims`.
pub fn convergence_study(dims: &[usize]) -> Result<Vec<ConvergenceRow>> {
    dims.iter()
        .map(|&dim| {
            let disc = SincDiscretization::for_dim(dim)?;
            let est = leading_eigen(&assemble_matrix(&disc)?)?;
            Ok(ConvergenceRow {
                n: disc.n,
                dim,
                h: disc.h,
                lambda: est.lambda_upper,
                mu_m: est.mu_m,
                iterations: est.iterations,
            })
        })
        .collect()
}
