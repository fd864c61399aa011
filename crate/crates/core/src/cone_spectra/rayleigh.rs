//! Upper bound for `λ₁(T₂)` from the test function `f₀ = sin dist(x, ∂T₂)`.
//!
//! Every side lies on a great circle, so `sin dist(x, side) = x·p` with `p`
//! the inward pole, and `|∇f₀|² = 1 − f₀²`. The quotient is
//! `(|T₂| − ∫f₀²) / ∫f₀²`, integrated in polar coordinates about a vertex over
//! one half of the triangle.

use std::f64::consts::{FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use super::vertex_angle_delta;
use crate::error::{Error, Result};
use crate::gauss::gauss_legendre;
use crate::perturbed_domain::{polar_to_unit, t2_boundary_radius};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayleighQuotient {
    pub quotient: f64,
    pub area: f64,
    /// `∫ f₀²` over the triangle.
    pub mass: f64,
}

/// `(2π + √3)/(π − √3)`.
pub fn rayleigh_closed_form() -> f64 {
    (2.0 * PI + 3f64.sqrt()) / (PI - 3f64.sqrt())
}

fn third_pole() -> [f64; 3] {
    let d = vertex_angle_delta(2);
    [-d.cos() * FRAC_PI_3.cos(), -d.cos() * FRAC_PI_3.sin(), d.sin()]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Gauss–Legendre in `θ` over `panels` panels of `order` nodes; in `r` each
/// ray is split at the kink of `f₀` and integrated with the same rule.
pub fn rayleigh_quotient_t2(panels: usize, order: usize) -> RayleighQuotient {
    let (x, w) = gauss_legendre(order);
    let p3 = third_pole();
    let d = vertex_angle_delta(2);
    let rule = |a: f64, b: f64, f: &dyn Fn(f64) -> f64| -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        x.iter().zip(&w).map(|(&xi, &wi)| wi * f(mid + half * xi)).sum::<f64>() * half
    };
    let (mut area, mut mass) = (0.0, 0.0);
    let dt = FRAC_PI_3 / panels as f64;
    for p in 0..panels {
        let (ta, tb) = (p as f64 * dt, (p + 1) as f64 * dt);
        area += rule(ta, tb, &|t| 1.0 - t2_boundary_radius(t).cos());
        mass += rule(ta, tb, &|t| {
            let rb = t2_boundary_radius(t);
            let kink = d.sin().atan2(t.sin() + d.cos() * (t - FRAC_PI_3).cos()).min(rb);
            let near_side = rule(0.0, kink, &|r| (r.sin() * t.sin()).powi(2) * r.sin());
            let far_side = rule(kink, rb, &|r| dot(polar_to_unit(r, t), p3).powi(2) * r.sin());
            near_side + far_side
        });
    }
    area *= 2.0;
    mass *= 2.0;
    RayleighQuotient { quotient: (area - mass) / mass, area, mass }
}

/// The quotient at the default resolution, checked against its closed form.
pub fn rayleigh_bound_t2() -> Result<f64> {
    let q = rayleigh_quotient_t2(8, 16).quotient;
    let exact = rayleigh_closed_form();
    if (q - exact).abs() > 1e-3 {
        return Err(Error::Quadrature(format!("Rayleigh quotient {q} differs from {exact}")));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_value() {
        assert!((rayleigh_closed_form() - 5.686_412_317_147_714).abs() < 1e-13);
    }

    #[test]
    fn matches_closed_form_and_is_below_six() {
        let q = rayleigh_bound_t2().unwrap();
        assert!((q - rayleigh_closed_form()).abs() < 1e-10, "{q}");
        assert!(q < 6.0);
    }

    #[test]
    fn area_and_mass() {
        let r = rayleigh_quotient_t2(8, 16);
        assert!((r.area - PI).abs() < 1e-12);
        assert!((r.mass - (PI - 3f64.sqrt()) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn refinement_is_stable() {
        let coarse = rayleigh_quotient_t2(2, 6).quotient;
        let fine = rayleigh_quotient_t2(4, 6).quotient;
        assert!((coarse - fine).abs() < 1e-3);
    }

    #[test]
    fn poles_are_inward() {
        let p3 = third_pole();
        let d = vertex_angle_delta(2);
        assert!(dot(polar_to_unit(d, FRAC_PI_3), p3).abs() < 1e-15);
        assert!(dot(polar_to_unit(t2_boundary_radius(0.0), 0.0), p3).abs() < 1e-15);
        assert!(dot([0.0, 0.0, 1.0], p3) > 0.0);
    }
}
