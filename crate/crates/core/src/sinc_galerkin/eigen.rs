use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenEstimate {
    /// `1/μ_m`.
    pub lambda_upper: f64,
    pub mu_m: f64,
    pub dim: usize,
    pub iterations: usize,
    /// `‖A x − μ x‖ / ‖x‖` at exit.
    pub residual: f64,
}

pub fn leading_eigen(a: &Array2<f64>) -> Result<EigenEstimate> {
    leading_eigen_with(a, 1e-12, 10_000)
}

/// Power iteration from the all-ones vector; stops when the Rayleigh
/// quotient changes by at most `tol` relative.
pub fn leading_eigen_with(a: &Array2<f64>, tol: f64, max_iter: usize) -> Result<EigenEstimate> {
    let (n, m) = a.dim();
    if n != m || n == 0 {
        return Err(invalid("matrix must be square and non-empty"));
    }
    let mut x = Array1::from_elem(n, 1.0 / (n as f64).sqrt());
    let mut mu = f64::NAN;
    for it in 1..=max_iter {
        let y = a.dot(&x);
        let next = x.dot(&y);
        let norm = y.dot(&y).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NonConvergence { what: "power iteration", iterations: it });
        }
        let done = (next - mu).abs() <= tol * next.abs();
        mu = next;
        x = y / norm;
        if done {
            if mu <= 0.0 {
                return Err(invalid(format!("leading eigenvalue {mu} is not positive")));
            }
            let residual = (a.dot(&x) - &x * mu).dot(&(a.dot(&x) - &x * mu)).sqrt();
            return Ok(EigenEstimate { lambda_upper: 1.0 / mu, mu_m: mu, dim: n, iterations: it, residual });
        }
    }
    Err(Error::NonConvergence { what: "power iteration", iterations: max_iter })
}
