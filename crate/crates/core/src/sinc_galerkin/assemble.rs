use std::f64::consts::FRAC_PI_2;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::{alpha_row, beta_row};
use super::conformal::weight_unchecked;
use super::greens::greens_unchecked;
use super::quadrature::{node, SincMap};
use super::SincDiscretization;
use crate::error::{Error, Result};

/// Nodes, weights and basis values on one side of a split point.
struct AxisPanel {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `basis[ι][p]`.
    basis: Vec<Vec<f64>>,
}

fn panel(disc: &SincDiscretization, map: SincMap, row: impl Fn(f64) -> Vec<f64>) -> AxisPanel {
    let nq = disc.quad_nodes as i64;
    let (mut nodes, mut weights, mut basis) = (Vec::new(), Vec::new(), Vec::new());
    for i in -nq - 1..=nq {
        let (t, w) = node(map, disc.quad_step, i);
        nodes.push(t);
        weights.push(w);
        basis.push(row(t));
    }
    AxisPanel { nodes, weights, basis }
}

/// Panels left and right of each `x_j` (resp. below and above each `y_k`);
/// `None` where the side is empty.
fn axis_panels(disc: &SincDiscretization) -> (Vec<[Option<AxisPanel>; 2]>, Vec<[Option<AxisPanel>; 2]>) {
    let xs = disc
        .x_points
        .iter()
        .map(|&x| {
            [
                Some(panel(disc, SincMap::Finite { a: 0.0, b: x }, |t| alpha_row(disc, t))),
                (x < FRAC_PI_2).then(|| panel(disc, SincMap::Finite { a: x, b: FRAC_PI_2 }, |t| alpha_row(disc, t))),
            ]
        })
        .collect();
    let ys = disc
        .y_points
        .iter()
        .map(|&y| {
            [
                (y > 0.0).then(|| panel(disc, SincMap::Finite { a: 0.0, b: y }, |t| beta_row(disc, t))),
                Some(panel(disc, SincMap::HalfLine { a: y }, |t| beta_row(disc, t))),
            ]
        })
        .collect();
    (xs, ys)
}

/// `A[(j,k),(p,q)] = −∫_D G(x_j + i y_k, ζ) α_p β_q Ψ dA`, by tensor sinc
/// quadrature over the four subregions cut at `(x_j, y_k)`.
///
/// Rows and columns are ordered with the `x` index outer: `(j, k) ↦ j·(2n+2) + k`.
pub fn assemble_matrix(disc: &SincDiscretization) -> Result<Array2<f64>> {
    disc.validate()?;
    let side = 2 * disc.n + 2;
    let (xp, yp) = axis_panels(disc);
    let rows: Vec<Vec<f64>> = (0..side * side)
        .into_par_iter()
        .map(|row| {
            let (pj, pk) = (row / side, row % side);
            let w = Complex64::new(disc.x_points[pj], disc.y_points[pk]).sin();
            let mut out = vec![0.0; side * side];
            for xs in xp[pj].iter().flatten() {
                for ys in yp[pk].iter().flatten() {
                    add_region(&mut out, side, w, xs, ys);
                }
            }
            out
        })
        .collect();
    let mut a = Array2::zeros((side * side, side * side));
    for (i, r) in rows.into_iter().enumerate() {
        if r.iter().any(|v| !v.is_finite()) {
            return Err(Error::Quadrature(format!("non-finite entry in row {i}")));
        }
        a.row_mut(i).assign(&ndarray::ArrayView1::from(&r));
    }
    Ok(a)
}

fn add_region(out: &mut [f64], side: usize, w: Complex64, xs: &AxisPanel, ys: &AxisPanel) {
    let ny = ys.nodes.len();
    // t[ι][q] = Σ_κ W[ι][κ] β_q(η_κ)
    let mut t = vec![0.0; side];
    let mut weights = vec![0.0; ny];
    for (i, &xi) in xs.nodes.iter().enumerate() {
        for (k, &eta) in ys.nodes.iter().enumerate() {
            let om = Complex64::new(xi, eta).sin();
            weights[k] = xs.weights[i] * ys.weights[k] * greens_unchecked(w, om) * weight_unchecked(xi, eta);
        }
        t.iter_mut().for_each(|v| *v = 0.0);
        for (k, wk) in weights.iter().enumerate() {
            for (tq, b) in t.iter_mut().zip(&ys.basis[k]) {
                *tq += wk * b;
            }
        }
        for (p, ap) in xs.basis[i].iter().enumerate() {
            if *ap == 0.0 {
                continue;
            }
            let row = &mut out[p * side..(p + 1) * side];
            for (o, tq) in row.iter_mut().zip(&t) {
                *o -= ap * tq;
            }
        }
    }
}
