//! Finite-volume Laplace–Beltrami eigensolver on polar grids of `S²`.
//!
//! Cells are centred at `r_i = (i − ½)Δr`, so the vertex is a face with zero
//! flux and needs no special treatment. Where a neighbour falls outside the
//! domain the flux is taken to the boundary point at its true distance
//! (Shortley–Weller cut), keeping the matrix symmetric. The generalised
//! problem `K u = λ M u` is solved by inverse iteration with a banded
//! Cholesky factor.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perturbed_domain::{t2_boundary_radius, LUNE_ANGLE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FdDomain {
    /// `T₂`: `0 < θ < 2π/3`, `0 < r < 2·atan β(θ)`.
    Triangle,
    /// Spherical cap `r < radius`, periodic in `θ`.
    Cap { radius: f64 },
    /// Lune `0 < θ < angle`, `0 < r < π`.
    Lune { angle: f64 },
}

impl FdDomain {
    fn boundary(&self, theta: f64) -> f64 {
        match *self {
            FdDomain::Triangle => t2_boundary_radius(theta),
            FdDomain::Cap { radius } => radius,
            FdDomain::Lune { .. } => PI,
        }
    }

    fn max_radius(&self) -> f64 {
        match *self {
            FdDomain::Triangle => t2_boundary_radius(LUNE_ANGLE / 2.0),
            FdDomain::Cap { radius } => radius,
            FdDomain::Lune { .. } => PI,
        }
    }

    /// `Some(opening)` for a Dirichlet sector, `None` when periodic.
    fn sector(&self) -> Option<f64> {
        match *self {
            FdDomain::Triangle => Some(LUNE_ANGLE),
            FdDomain::Cap { .. } => None,
            FdDomain::Lune { angle } => Some(angle),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FDGrid {
    pub nr: usize,
    pub ntheta: usize,
    pub domain: FdDomain,
}

impl FDGrid {
    pub fn triangle(nr: usize, ntheta: usize) -> Self {
        FDGrid { nr, ntheta, domain: FdDomain::Triangle }
    }

    pub fn refined(&self) -> Self {
        FDGrid { nr: 2 * self.nr, ntheta: 2 * self.ntheta, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdEstimate {
    pub coarse: f64,
    pub fine: f64,
    /// `(4·fine − coarse)/3`.
    pub extrapolated: f64,
}

/// Symmetric positive definite band matrix, lower half stored row by row.
struct Band {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl Band {
    fn new(n: usize, bw: usize) -> Self {
        Band { n, bw, data: vec![0.0; n * (bw + 1)] }
    }

    /// Entry `(i, j)` with `j ≤ i ≤ j + bw`.
    fn at(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * (self.bw + 1) + (self.bw + j - i)]
    }

    fn cholesky(&mut self) -> Result<()> {
        let (n, bw) = (self.n, self.bw);
        let w = bw + 1;
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            for j in j0..=i {
                let k0 = j0.max(j.saturating_sub(bw));
                let mut s = self.data[i * w + bw + j - i];
                for k in k0..j {
                    s -= self.data[i * w + bw + k - i] * self.data[j * w + bw + k - j];
                }
                if j == i {
                    if s <= 0.0 {
                        return Err(Error::SingularMatrix(i));
                    }
                    self.data[i * w + bw] = s.sqrt();
                } else {
                    self.data[i * w + bw + j - i] = s / self.data[j * w + bw];
                }
            }
        }
        Ok(())
    }

    fn solve(&self, b: &mut [f64]) {
        let (n, bw) = (self.n, self.bw);
        let w = bw + 1;
        for i in 0..n {
            let mut s = b[i];
            for k in i.saturating_sub(bw)..i {
                s -= self.data[i * w + bw + k - i] * b[k];
            }
            b[i] = s / self.data[i * w + bw];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..(i + bw + 1).min(n) {
                s -= self.data[k * w + bw + i - k] * b[k];
            }
            b[i] = s / self.data[i * w + bw];
        }
    }
}

fn first_crossing(domain: &FdDomain, r: f64, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..60 {
        let mid = 0.5 * (inside + outside);
        if domain.boundary(mid) > r {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

/// Smallest Dirichlet eigenvalue on one grid.
pub fn fd_eigen(grid: &FDGrid) -> Result<f64> {
    if grid.nr < 4 || grid.ntheta < 4 {
        return Err(invalid("grid needs at least 4 cells per direction"));
    }
    let d = grid.domain;
    if let FdDomain::Cap { radius } = d {
        if !(radius > 0.0 && radius < PI) {
            return Err(invalid("cap radius must lie in (0, pi)"));
        }
    }
    let dr = d.max_radius() / grid.nr as f64;
    let (dth, thetas): (f64, Vec<f64>) = match d.sector() {
        Some(open) => {
            let dth = open / grid.ntheta as f64;
            (dth, (1..grid.ntheta).map(|j| j as f64 * dth).collect())
        }
        None => {
            let dth = 2.0 * PI / grid.ntheta as f64;
            (dth, (0..grid.ntheta).map(|j| j as f64 * dth).collect())
        }
    };
    let periodic = d.sector().is_none();
    let nt = thetas.len();
    let r_at = |i: usize| (i as f64 + 0.5) * dr;
    let inside = |i: usize, j: usize| r_at(i) < d.boundary(thetas[j]);

    let mut index = vec![usize::MAX; grid.nr * nt];
    let mut count = 0;
    for i in 0..grid.nr {
        for j in 0..nt {
            if inside(i, j) {
                index[i * nt + j] = count;
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err(invalid("grid has no interior cells"));
    }
    // r-major numbering: neighbours are at most one row (nt cells) apart.
    // Cell-integrated coefficients: radial faces sin(r_face)·Δθ/Δr, angular
    // faces Δr/(sin r·Δθ), mass sin r·Δr·Δθ.
    let mut k = Band::new(count, nt);
    let mut mass = vec![0.0; count];
    for i in 0..grid.nr {
        let r = r_at(i);
        let ang = dr / (r.sin() * dth);
        for j in 0..nt {
            let p = index[i * nt + j];
            if p == usize::MAX {
                continue;
            }
            mass[p] = r.sin() * dr * dth;
            let mut diag = 0.0;
            if i > 0 {
                let c = (r - 0.5 * dr).sin() * dth / dr;
                diag += c;
                *k.at(p, index[(i - 1) * nt + j]) -= c;
            }
            if i + 1 < grid.nr && inside(i + 1, j) {
                diag += (r + 0.5 * dr).sin() * dth / dr;
            } else {
                let s = d.boundary(thetas[j]) - r;
                diag += (r + 0.5 * s).sin() * dth / s;
            }
            for step in [-1i64, 1] {
                let jn = j as i64 + step;
                let neighbour = if periodic {
                    Some(jn.rem_euclid(nt as i64) as usize)
                } else if jn < 0 || jn >= nt as i64 {
                    None
                } else {
                    Some(jn as usize)
                };
                match neighbour {
                    Some(q) if inside(i, q) => {
                        diag += ang;
                        let qi = index[i * nt + q];
                        if qi < p {
                            *k.at(p, qi) -= ang;
                        }
                    }
                    Some(q) => {
                        let cut = first_crossing(&d, r, thetas[j], thetas[q]);
                        diag += dr / (r.sin() * (cut - thetas[j]).abs());
                    }
                    // Sector edge, exactly one step away.
                    None => diag += ang,
                }
            }
            *k.at(p, p) += diag;
        }
    }
    k.cholesky()?;

    let mut x = vec![1.0; count];
    let mut lambda = f64::NAN;
    for it in 0..500 {
        let mut y: Vec<f64> = x.iter().zip(&mass).map(|(a, m)| a * m).collect();
        k.solve(&mut y);
        let ymx: f64 = y.iter().zip(&x).zip(&mass).map(|((a, b), m)| a * b * m).sum();
        let ymy: f64 = y.iter().zip(&mass).map(|(a, m)| a * a * m).sum();
        let next = ymx / ymy;
        let norm = ymy.sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
        if it > 5 && (next - lambda).abs() <= 1e-13 * next {
            return Ok(next);
        }
        lambda = next;
    }
    Err(Error::NonConvergence { what: "inverse iteration", iterations: 500 })
}

/// Two grids (`grid` and its refinement) and their Richardson combination.
pub fn fd_richardson(grid: &FDGrid) -> Result<FdEstimate> {
    let coarse = fd_eigen(grid)?;
    let fine = fd_eigen(&grid.refined())?;
    Ok(FdEstimate { coarse, fine, extrapolated: (4.0 * fine - coarse) / 3.0 })
}

/// Extrapolated `λ₁(T₂)` from `grid` and its refinement.
pub fn fd_triangle_eigen(grid: &FDGrid) -> Result<f64> {
    if grid.domain != FdDomain::Triangle {
        return Err(invalid("fd_triangle_eigen expects the triangle domain"));
    }
    Ok(fd_richardson(grid)?.extrapolated)
}
