//! Map from the half-strip to the sixth of `T₂` in the stereographic plane.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::StripPoint;
use crate::error::{invalid, Result};

fn pieces(z: Complex64) -> (Complex64, Complex64) {
    let g = (z.cos().ln() * (2.0 / 3.0)).exp();
    let den = 3f64.sqrt() * (1.0 + g) + 2.0 * (1.0 + g + g * g).sqrt();
    (g, den)
}

/// `Φ(z) = sqrt((1 − g)/(√3(1 + g) + 2 sqrt(1 + g + g²)))`, `g = cos^{2/3} z`.
pub fn schwarz_map(z: StripPoint) -> Complex64 {
    let zc = Complex64::new(z.re, z.im);
    if zc == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    let (g, den) = pieces(zc);
    debug_assert!(den.norm() > 0.0);
    let q = (1.0 - g) / den;
    if q.im == 0.0 && q.re < 0.0 {
        // Branch taken from above the cut.
        return Complex64::new(0.0, (-q.re).sqrt());
    }
    q.sqrt()
}

/// `4|Φ′|²/(1 + |Φ|²)²` in closed form.
pub fn conformal_weight(z: StripPoint) -> Result<f64> {
    if z.re >= FRAC_PI_2 && z.im == 0.0 {
        return Err(invalid("conformal weight is singular at z = pi/2"));
    }
    Ok(weight_unchecked(z.re, z.im))
}

pub(crate) fn weight_unchecked(x: f64, y: f64) -> f64 {
    let (g, den) = pieces(Complex64::new(x, y));
    let d = den.norm();
    (4.0 / 3.0) * d / (g.norm() * (d + (1.0 - g).norm()).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(re: f64, im: f64) -> StripPoint {
        StripPoint::new(re, im).unwrap()
    }

    #[test]
    fn vertex_images() {
        let v = (6f64.sqrt() - 2f64.sqrt()) / 2.0;
        assert_eq!(schwarz_map(p(0.0, 0.0)).norm(), 0.0);
        let f = schwarz_map(p(FRAC_PI_2, 0.0));
        assert!((f.re - v).abs() < 1e-10 && f.im.abs() < 1e-12, "{f}");
        let far = schwarz_map(p(0.4, 30.0));
        assert!((far - Complex64::new(0.0, v)).norm() < 1e-8, "{far}");
    }

    #[test]
    fn imaginary_axis_is_the_dirichlet_edge() {
        let v = (6f64.sqrt() - 2f64.sqrt()) / 2.0;
        for y in [0.1, 0.5, 2.0, 5.0] {
            let w = schwarz_map(p(0.0, y));
            assert!(w.re.abs() < 1e-12, "{w}");
            assert!(w.im > 0.0 && w.im < v);
        }
    }

    #[test]
    fn schwarz_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s3 = 3f64.sqrt();
        for _ in 0..50 {
            let z = Complex64::new(rng.random_range(0.01..1.56), rng.random_range(0.01..3.0));
            let w = schwarz_map(p(z.re, z.im));
            let w2 = w * w;
            let w4 = w2 * w2;
            let rhs = ((w4 + 2.0 * s3 * w2 - 1.0) / (w4 - 2.0 * s3 * w2 - 1.0)).powi(3);
            let lhs = z.cos() * z.cos();
            assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0), "{z} {lhs} {rhs}");
        }
    }

    #[test]
    fn weight_matches_map_derivative() {
        let fd = |x: f64, y: f64| {
            let h = 1e-6;
            let d = (schwarz_map(p(x + h, y)) - schwarz_map(p(x - h, y))) / (2.0 * h);
            let w = schwarz_map(p(x, y)).norm_sqr();
            4.0 * d.norm_sqr() / (1.0 + w).powi(2)
        };
        for i in 1..10 {
            for j in 1..10 {
                let (x, y) = (0.155 * i as f64, 0.3 * j as f64);
                let a = conformal_weight(p(x, y)).unwrap();
                assert!((a - fd(x, y)).abs() < 1e-6, "{x} {y}");
            }
        }
        assert!((conformal_weight(p(0.7, 0.4)).unwrap() - fd(0.7, 0.4)).abs() < 1e-6);
        assert!(conformal_weight(p(0.01, 0.0)).unwrap().is_finite());
        assert!(conformal_weight(p(FRAC_PI_2, 0.0)).is_err());
    }

    #[test]
    fn weight_positive() {
        for i in 0..10 {
            for j in 0..10 {
                let w = conformal_weight(p(0.01 + 0.155 * i as f64, 0.3 * j as f64)).unwrap();
                assert!(w > 0.0);
            }
        }
    }
}
