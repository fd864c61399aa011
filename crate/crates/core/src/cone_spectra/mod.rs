//! First Dirichlet eigenvalues of spherical cones.
//!
//! A cone `TC(Ω, r₀) ⊂ Sⁿ` is the set of points at geodesic distance at most `r₀`
//! from a pole whose direction lies in a base domain `Ω ⊂ Sⁿ⁻¹`. Separating
//! variables with radial factor `sin^m(r)·u(r)` reduces the eigenvalue problem to
//! a hypergeometric equation in `x = (1 - cos r)/2`, so
//!
//! * the double cone (`r₀ = π`) has the closed form `μ = λ + m`,
//! * the truncated cone has `μ` equal to the first zero in `μ` of
//!   `2F1(α₁(μ), β₁(μ); γ₁; (1 - cos r₀)/2)`.
//!
//! The base enters only through its first eigenvalue `λ`.

mod rayleigh;
mod verdict;

pub use rayleigh::{rayleigh_bound_t2, rayleigh_closed_form, rayleigh_quotient_t2, RayleighQuotient};
pub use verdict::{verdict, ChainStep, ExponentBound, Verdict};

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hyperfun::{gauss_2f1, HyperParams};

/// First eigenvalue of the comparison arc `T̂₁ = T₁ = [0, 2π/3]`.
pub const LAMBDA_T1: f64 = 9.0 / 4.0;
/// Eigenvalue of the perturbed nodal domain that contains `T₂`.
pub const LAMBDA_G2: f64 = 5.102;

const PRESCAN_POINTS: usize = 64;
const ROOT_TOL: f64 = 1e-10;

/// The `(n, λ, r₀)` triple shared by every eigenvalue relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    /// Dimension of the ambient sphere `Sⁿ`.
    pub n: u32,
    /// First Dirichlet eigenvalue of the base `Ω ⊂ Sⁿ⁻¹`.
    pub lambda: f64,
    /// Truncation radius in radians, `0 < r₀ ≤ π`.
    pub r0: f64,
}

impl ConeSpec {
    pub fn new(n: u32, lambda: f64, r0: f64) -> Result<Self> {
        let spec = ConeSpec { n, lambda, r0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(invalid("sphere dimension n must be at least 1"));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(invalid(format!("lambda = {} must be positive", self.lambda)));
        }
        if !(self.r0 > 0.0 && self.r0 <= PI) {
            return Err(invalid(format!("r0 = {} outside (0, pi]", self.r0)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub mu: f64,
    /// Separation exponent of the radial factor `sin^m r`.
    pub m: f64,
    /// Interval certified to contain the root; `(mu, mu)` for closed forms.
    pub bracket: (f64, f64),
    /// Hypergeometric evaluations spent.
    pub evals: usize,
}

/// Positive root of `m² + m(n-2) = λ`.
pub fn m_exponent(n: u32, lambda: f64) -> f64 {
    let b = (n as f64 - 2.0) / 2.0;
    let disc = (b * b + lambda).sqrt();
    if b >= 0.0 {
        // Rationalised to avoid cancellation when λ ≪ b².
        lambda / (b + disc)
    } else {
        -b + disc
    }
}

/// First eigenvalue of the double cone `TC(Ω, π)`: `λ + m`.
pub fn double_cone_eigen(n: u32, lambda: f64) -> EigenResult {
    let m = m_exponent(n, lambda);
    let mu = lambda + m;
    EigenResult { mu, m, bracket: (mu, mu), evals: 0 }
}

/// Eigenvalue of the `sin^m r · cos r` mode, `λ + 3m + n`.
pub fn second_mode_eigen(n: u32, lambda: f64) -> f64 {
    lambda + 3.0 * m_exponent(n, lambda) + n as f64
}

/// `2F1(α₁(μ), β₁(μ); γ₁; (1 - cos r₀)/2)`, whose first zero in `μ` is the
/// truncated-cone eigenvalue.
pub fn characteristic(n: u32, lambda: f64, r0: f64, mu: f64) -> Result<f64> {
    let nf = n as f64;
    let s = ((nf - 2.0).powi(2) + 4.0 * lambda).sqrt();
    let t = ((nf - 1.0).powi(2) + 4.0 * mu).sqrt();
    let z = (0.5 * r0).sin().powi(2);
    let p = HyperParams::new(0.5 * (1.0 + s + t), 0.5 * (1.0 + s - t), 0.5 * (2.0 + s), z)?;
    gauss_2f1(&p)
}

/// First Dirichlet eigenvalue of the truncated cone `TC(Ω, r₀)`.
///
/// The root is bracketed in `(m + λ, 3m + λ + n)`: at the left end the series
/// collapses to `1`, at the right end to `1 - 2z`, which is negative once
/// `r₀ > π/2`. For `r₀ ≤ π/2` the right end is pushed out by doubling until the
/// sign flips. A 64-point pre-scan picks the first sign change before bisection.
pub fn truncated_cone_eigen(spec: &ConeSpec) -> Result<EigenResult> {
    spec.validate()?;
    let ConeSpec { n, lambda, r0 } = *spec;
    if r0 == PI {
        return Ok(double_cone_eigen(n, lambda));
    }
    let m = m_exponent(n, lambda);
    let lo = m + lambda;
    let mut hi = 3.0 * m + lambda + n as f64;
    let mut evals = 0usize;
    let mut eval = |mu: f64| -> Result<f64> {
        evals += 1;
        characteristic(n, lambda, r0, mu)
    };

    if r0 <= FRAC_PI_2 {
        let mut width = hi - lo;
        let mut tries = 0;
        while eval(hi)? > 0.0 {
            tries += 1;
            if tries > 60 {
                return Err(Error::NoSignChange { lo, hi, scan: Vec::new() });
            }
            width *= 2.0;
            hi = lo + width;
        }
    }

    // The value at `lo` is exactly 1 (β₁ = 0); it is not re-evaluated because
    // rounding in β₁ is amplified by (1 - z)^(γ - α - β) as r₀ → π.
    let mut scan = Vec::with_capacity(PRESCAN_POINTS + 1);
    scan.push((lo, 1.0));
    let mut bracket = None;
    for i in 1..=PRESCAN_POINTS {
        let mu = lo + (hi - lo) * i as f64 / PRESCAN_POINTS as f64;
        let v = eval(mu)?;
        let prev = scan.last().copied().unwrap();
        scan.push((mu, v));
        if v <= 0.0 {
            bracket = Some((prev.0, mu, v));
            break;
        }
    }
    let (mut a, mut b, fb) = match bracket {
        Some(br) => br,
        None => return Err(Error::NoSignChange { lo, hi, scan }),
    };
    if fb == 0.0 {
        a = b;
    }
    while b - a > ROOT_TOL {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if eval(mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(EigenResult { mu: 0.5 * (a + b), m, bracket: (a, b), evals })
}

/// Distance from a vertex of the regular `(k+2)`-cell tessellation face
/// `T_k ⊂ S^k` to the centre of the opposite face.
pub fn vertex_angle_delta(k: u32) -> f64 {
    let k = k as f64;
    (-(k / (2.0 * (k + 1.0))).sqrt()).acos()
}

/// Exponent `a` in `P(τ > t) ~ c·t^{-a}` for Brownian exit from the cone over
/// `D ⊂ Sⁿ` with first eigenvalue `λ_D`.
pub fn decay_exponent(n: u32, lambda_d: f64) -> f64 {
    let b = (n as f64 - 1.0) / 2.0;
    0.5 * ((b * b + lambda_d).sqrt() - b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatTableRow {
    /// Number of predators; the row describes `T̂_{n-1}` and `D_n`.
    pub n: u32,
    /// `λ₁(T̂_{n-1})`.
    pub lambda_hat: f64,
    /// Lower bound for the decay exponent `a(n)`.
    pub a_lower: f64,
}

/// Iterates `T̂_k = TC(T̂_{k-1}, δ(k))` from `λ₁(T̂₁) = 9/4` and reports rows
/// `n = 2..=max_n`.
pub fn hat_t_table(max_n: u32) -> Result<Vec<HatTableRow>> {
    if max_n < 2 {
        return Err(invalid("hat_t_table needs max_n >= 2"));
    }
    let mut rows = Vec::with_capacity(max_n as usize - 1);
    let mut lambda_hat = LAMBDA_T1;
    for n in 2..=max_n {
        if n > 2 {
            let k = n - 1;
            let spec = ConeSpec::new(k, lambda_hat, vertex_angle_delta(k))?;
            lambda_hat = truncated_cone_eigen(&spec)?.mu;
        }
        let a_lower = decay_exponent(n, double_cone_eigen(n, lambda_hat).mu);
        rows.push(HatTableRow { n, lambda_hat, a_lower });
    }
    Ok(rows)
}

/// `μ(3, λ, δ(3))`, the eigenvalue of the cone over a base with eigenvalue `λ`
/// truncated at the tetrahedral vertex distance.
pub fn tetra_cone_eigen(lambda: f64) -> Result<f64> {
    Ok(truncated_cone_eigen(&ConeSpec::new(3, lambda, vertex_angle_delta(3))?)?.mu)
}

/// The base eigenvalue `λ_cr` with `μ(3, λ_cr, δ(3)) = 8`.
pub fn lambda_critical() -> Result<f64> {
    let (mut lo, mut hi) = (5.0, 5.2);
    if tetra_cone_eigen(lo)? >= 8.0 || tetra_cone_eigen(hi)? <= 8.0 {
        return Err(Error::NoSignChange { lo, hi, scan: Vec::new() });
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if tetra_cone_eigen(mid)? < 8.0 {
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
    use proptest::prelude::*;

    fn trunc(n: u32, lambda: f64, r0: f64) -> EigenResult {
        truncated_cone_eigen(&ConeSpec::new(n, lambda, r0).unwrap()).unwrap()
    }

    #[test]
    fn m_exponent_examples() {
        assert!((m_exponent(2, 2.25) - 1.5).abs() < 1e-15);
        for n in 1..8 {
            assert!((m_exponent(n, 2.0 * n as f64) - 2.0).abs() < 1e-14);
        }
        let m = m_exponent(3, 5.102);
        assert!((m - (-0.5 + (0.25f64 + 5.102).sqrt())).abs() < 1e-15);
        assert!((m * m + m - 5.102).abs() < 1e-12);
    }

    #[test]
    fn double_cone_examples() {
        assert!((double_cone_eigen(2, 2.25).mu - 3.75).abs() < 1e-15);
        for n in 1..8 {
            let nf = n as f64;
            assert!((double_cone_eigen(n, 2.0 * nf).mu - (2.0 * nf + 2.0)).abs() < 1e-13);
        }
        assert!((double_cone_eigen(4, 8.00087815).mu - 10.001024501).abs() < 1e-8);
    }

    #[test]
    fn second_mode_examples() {
        assert!((second_mode_eigen(2, 2.25) - 8.75).abs() < 1e-14);
        assert!((second_mode_eigen(2, 4.0) - 12.0).abs() < 1e-14);
        let m = 1.081_138_830_084_189_7; // -1/2 + sqrt(1/4 + 9/4)
        assert!((second_mode_eigen(3, 2.25) - (2.25 + 3.0 * m + 3.0)).abs() < 1e-14);
        for n in 1..6 {
            for lam in [0.5, 2.0, 9.0] {
                assert!(second_mode_eigen(n, lam) > double_cone_eigen(n, lam).mu);
            }
        }
    }

    #[test]
    fn delta_examples() {
        assert!((vertex_angle_delta(1) - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((vertex_angle_delta(2) - (-1.0 / 3f64.sqrt()).acos()).abs() < 1e-15);
        assert!((vertex_angle_delta(2) - 2.186_276_035_465_284).abs() < 1e-14);
        assert!((vertex_angle_delta(3) - (-(0.375f64).sqrt()).acos()).abs() < 1e-15);
        // Increasing towards 3π/4 as the faces get thinner.
        let mut prev = FRAC_PI_2;
        for k in 1..20 {
            let d = vertex_angle_delta(k);
            assert!(d > prev && d < 0.75 * PI);
            prev = d;
        }
    }

    #[test]
    fn truncated_cone_examples() {
        let r = trunc(2, 2.25, vertex_angle_delta(2));
        assert!((r.mu - 5.00463581).abs() < 1e-6, "{}", r.mu);
        assert!(r.bracket.0 < r.mu && r.mu < r.bracket.1);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-10);
        let r = trunc(3, 5.00463581, vertex_angle_delta(3));
        assert!((r.mu - 7.884040724).abs() < 1e-6, "{}", r.mu);
        let r = trunc(3, 5.102, vertex_angle_delta(3));
        assert!((r.mu - 8.00087815).abs() < 1e-6, "{}", r.mu);
    }

    #[test]
    fn truncated_cone_approaches_double_cone() {
        let r = trunc(2, 2.25, PI - 1e-4);
        assert!((r.mu - 3.75).abs() < 5e-3, "{}", r.mu);
        assert_eq!(trunc(2, 2.25, PI).mu, 3.75);
    }

    #[test]
    fn small_radius_uses_extended_bracket() {
        // r0 = pi/2 has its root exactly at the right end of the standard bracket.
        let r = trunc(2, 2.25, FRAC_PI_2);
        assert!((r.mu - second_mode_eigen(2, 2.25)).abs() < 1e-8);
        let small = trunc(2, 2.25, 1.0);
        assert!(small.mu > r.mu);
    }

    #[test]
    fn bracket_endpoints_have_opposite_signs() {
        for n in [2, 3, 4] {
            for lambda in [1.0, 2.25, 5.102, 8.0] {
                for r0 in [1.8, 2.0, vertex_angle_delta(2), vertex_angle_delta(3)] {
                    let m = m_exponent(n, lambda);
                    let lo = characteristic(n, lambda, r0, m + lambda).unwrap();
                    let hi = characteristic(n, lambda, r0, 3.0 * m + lambda + n as f64).unwrap();
                    assert!(lo > 0.0 && hi < 0.0, "n={n} lambda={lambda} r0={r0}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_radius_and_base_eigenvalue() {
        for n in [2, 3, 4] {
            let radii: Vec<f64> = (0..8).map(|i| 1.7 + 0.15 * i as f64).collect();
            let mus: Vec<f64> = radii.iter().map(|&r| trunc(n, 2.25, r).mu).collect();
            assert!(mus.windows(2).all(|w| w[1] < w[0]), "{mus:?}");
            let lams = [0.5, 1.0, 2.25, 4.0, 6.0, 9.0];
            let mus: Vec<f64> = lams.iter().map(|&l| trunc(n, l, 2.0).mu).collect();
            assert!(mus.windows(2).all(|w| w[1] > w[0]), "{mus:?}");
        }
    }

    #[test]
    fn decay_exponent_examples() {
        assert!((decay_exponent(2, 3.75) - 0.75).abs() < 1e-15);
        assert!((decay_exponent(4, 10.001024501) - 1.00007318).abs() < 1e-8);
        let d3 = double_cone_eigen(3, 5.102).mu;
        assert!((decay_exponent(3, d3) - 0.90671950).abs() < 1e-8);
        for n in 1..10 {
            assert!((decay_exponent(n, 2.0 * n as f64 + 2.0) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn criterion_boundary() {
        for n in 1..10 {
            let edge = 2.0 * n as f64 + 2.0;
            assert!(decay_exponent(n, edge + 1e-9) > 1.0);
            assert!(decay_exponent(n, edge - 1e-9) < 1.0);
        }
    }

    #[test]
    fn table_rows() {
        let rows = hat_t_table(6).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].lambda_hat, 2.25);
        assert!((rows[0].a_lower - 0.75).abs() < 1e-15);
        assert!((rows[3].lambda_hat - 10.77018488).abs() < 1e-6);
        assert!((rows[3].a_lower - 1.05417466).abs() < 1e-7);
        assert!((rows[4].lambda_hat - 13.6203196).abs() < 1e-6);
        assert!((rows[4].a_lower - 1.09882819).abs() < 1e-7);
        assert!(rows.windows(2).all(|w| w[1].lambda_hat > w[0].lambda_hat));
        assert!(rows.windows(2).all(|w| w[1].a_lower > w[0].a_lower));
        assert!(hat_t_table(1).is_err());
    }

    #[test]
    fn critical_eigenvalue() {
        let lcr = lambda_critical().unwrap();
        assert!((lcr - 5.101267527).abs() < 1e-6, "{lcr}");
        assert!((tetra_cone_eigen(lcr).unwrap() - 8.0).abs() < 1e-8);
        assert!(tetra_cone_eigen(5.0).unwrap() < 8.0);
        assert!(tetra_cone_eigen(5.2).unwrap() > 8.0);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(ConeSpec::new(0, 1.0, 1.0).is_err());
        assert!(ConeSpec::new(2, -1.0, 1.0).is_err());
        assert!(ConeSpec::new(2, 1.0, 0.0).is_err());
        assert!(ConeSpec::new(2, 1.0, 3.2).is_err());
    }

    proptest! {
        #[test]
        fn separation_identities(n in 1u32..12, lambda in 0.01f64..50.0) {
            let m = m_exponent(n, lambda);
            prop_assert!(m > 0.0);
            prop_assert!((m * m + m * (n as f64 - 2.0) - lambda).abs() <= 1e-10 * lambda.max(1.0));
            prop_assert_eq!(double_cone_eigen(n, lambda).mu, lambda + m);
        }

        #[test]
        fn exponent_criterion(n in 1u32..12, lambda_d in 0.01f64..60.0) {
            let edge = 2.0 * n as f64 + 2.0;
            prop_assert_eq!(decay_exponent(n, lambda_d) > 1.0, lambda_d > edge);
        }

        #[test]
        fn double_cone_increasing(n in 1u32..10, a in 0.01f64..30.0, da in 1e-6f64..5.0) {
            prop_assert!(double_cone_eigen(n, a + da).mu > double_cone_eigen(n, a).mu);
        }
    }
}
