//! Green's function of the half-strip with Dirichlet data on `Re z = 0` and
//! Neumann data on the other two sides.
//!
//! `w = sin z` opens the strip onto the first quadrant, where the two edge
//! conditions are met by one odd and one even reflection. With this sign
//! `Δ_z G = +δ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::StripPoint;
use crate::error::{invalid, Result};

pub fn greens_function(z: StripPoint, zeta: StripPoint) -> Result<f64> {
    if z == zeta {
        return Err(invalid("Green's function is singular at z = zeta"));
    }
    Ok(greens_unchecked(Complex64::new(z.re, z.im).sin(), Complex64::new(zeta.re, zeta.im).sin()))
}

/// Same kernel in the quadrant variables `w = sin z`, `ω = sin ζ`.
pub(crate) fn greens_unchecked(w: Complex64, om: Complex64) -> f64 {
    let wb = w.conj();
    let num = (w - om).norm_sqr() * (wb - om).norm_sqr();
    let den = (wb + om).norm_sqr() * (w + om).norm_sqr();
    (num / den).ln() / (4.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gauss_legendre;

    fn p(re: f64, im: f64) -> StripPoint {
        StripPoint::new(re, im).unwrap()
    }

    #[test]
    fn vanishes_on_dirichlet_edge() {
        for y in [0.1, 0.7, 2.0] {
            let g = greens_function(p(0.0, y), p(0.9, 0.4)).unwrap();
            assert!(g.abs() < 1e-12);
        }
    }

    #[test]
    fn neumann_edges() {
        // Central differences straddling the edge; the kernel formula extends past it.
        let om = Complex64::new(0.6, 0.8).sin();
        let g = |x: f64, y: f64| greens_unchecked(Complex64::new(x, y).sin(), om);
        let h = 1e-5;
        for x in [0.2, 0.9, 1.4] {
            let d = (g(x, h) - g(x, -h)) / (2.0 * h);
            assert!(d.abs() < 1e-6, "{x} {d}");
        }
        let edge = std::f64::consts::FRAC_PI_2;
        for y in [0.2, 1.0, 2.5] {
            let d = (g(edge + h, y) - g(edge - h, y)) / (2.0 * h);
            assert!(d.abs() < 1e-6, "{y} {d}");
        }
    }

    #[test]
    fn symmetric() {
        let (a, b) = (p(0.3, 0.2), p(1.1, 1.7));
        assert!((greens_function(a, b).unwrap() - greens_function(b, a).unwrap()).abs() < 1e-14);
        assert!(greens_function(a, a).is_err());
    }

    /// `∫ G(z, ·) Δv` for a radial bump `v` of radius `rad` centred at `c`.
    fn reproduce(z: StripPoint, c: (f64, f64), rad: f64) -> f64 {
        let lap = |rho: f64| {
            let q = (rho / rad).powi(2);
            let s = 1.0 - q;
            if s <= 0.0 {
                return 0.0;
            }
            let v = (-1.0 / s).exp();
            let r2 = rad * rad;
            v * (-4.0 / (r2 * s * s) - 8.0 * rho * rho / (r2 * r2 * s.powi(3)) + 4.0 * rho * rho / (r2 * r2 * s.powi(4)))
        };
        let (x, w) = gauss_legendre(24);
        let panels = 16;
        let mut total = 0.0;
        for pr in 0..panels {
            let (a, b) = (rad * pr as f64 / panels as f64, rad * (pr + 1) as f64 / panels as f64);
            for (xi, wi) in x.iter().zip(&w) {
                let rho = 0.5 * (a + b) + 0.5 * (b - a) * xi;
                let mut ring = 0.0;
                for (xj, wj) in x.iter().zip(&w) {
                    for q in 0..4 {
                        let phi = PI / 2.0 * (q as f64 + 0.5 + 0.5 * xj);
                        let zeta = Complex64::new(c.0 + rho * phi.cos(), c.1 + rho * phi.sin());
                        let g = greens_unchecked(Complex64::new(z.re, z.im).sin(), zeta.sin());
                        ring += wj * 0.5 * (PI / 2.0) * g;
                    }
                }
                total += wi * 0.5 * (b - a) * rho * ring * lap(rho);
            }
        }
        total
    }

    #[test]
    fn reproduces_point_values() {
        let c = (0.8, 0.9);
        let at_centre = reproduce(p(c.0, c.1), c, 0.3);
        assert!((at_centre - (-1f64).exp()).abs() < 1e-6, "{at_centre}");
        let away = reproduce(p(0.2, 2.0), c, 0.3);
        assert!(away.abs() < 1e-8, "{away}");
    }
}
