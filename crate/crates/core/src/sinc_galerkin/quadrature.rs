//! One-dimensional sinc quadrature on an interval or a half-line, and the
//! tensor products used over the four subregions of the strip.

use serde::{Deserialize, Serialize};

/// The interval and its log-type map to the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SincMap {
    /// `(a, b)` with `s = ln((t − a)/(b − t))`.
    Finite { a: f64, b: f64 },
    /// `(a, ∞)` with `s = ln sinh(t − a)`.
    HalfLine { a: f64 },
}

/// Nodes `s = ιh` for `ι ∈ [lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SincRule {
    pub h: f64,
    pub lower: i64,
    pub upper: i64,
}

impl SincRule {
    /// Node ranges chosen so both truncation tails match: the integrand,
    /// including `1/φ′`, decays like `e^{−left|s|}` and `e^{−right·s}`.
    pub fn balanced(m: usize, left: f64, right: f64, d: f64) -> Self {
        let h = (2.0 * std::f64::consts::PI * d / (left * m as f64)).sqrt();
        let n = (left * m as f64 / right).ceil() as i64;
        SincRule { h, lower: -(m as i64), upper: n }
    }

    /// Nodes and weights `h/φ′(t)` on `map`.
    pub fn nodes(&self, map: SincMap) -> Vec<(f64, f64)> {
        (self.lower..=self.upper).map(|i| node(map, self.h, i)).collect()
    }
}

pub(crate) fn node(map: SincMap, h: f64, i: i64) -> (f64, f64) {
    let s = h * i as f64;
    match map {
        SincMap::Finite { a, b } => {
            // Written to keep t − a and b − t accurate near both ends.
            let len = b - a;
            if s >= 0.0 {
                let e = (-s).exp();
                let right = len * e / (1.0 + e);
                (b - right, h * len * e / ((1.0 + e) * (1.0 + e)))
            } else {
                let e = s.exp();
                let left = len * e / (1.0 + e);
                (a + left, h * len * e / ((1.0 + e) * (1.0 + e)))
            }
        }
        SincMap::HalfLine { a } => {
            let u = s.exp().asinh();
            (a + u, h * u.tanh())
        }
    }
}

/// `∫ f` over the interval of `map`.
pub fn sinc_quadrature<F: FnMut(f64) -> f64>(rule: &SincRule, map: SincMap, mut f: F) -> f64 {
    rule.nodes(map).into_iter().map(|(t, w)| w * f(t)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn sine_on_quarter_period() {
        // sin x · (x(π/2 − x)) decays like e^{2s} on the left and e^{−s} on the right.
        let rule = SincRule::balanced(32, 2.0, 1.0, FRAC_PI_2);
        let v = sinc_quadrature(&rule, SincMap::Finite { a: 0.0, b: FRAC_PI_2 }, f64::sin);
        assert!((v - 1.0).abs() < 1e-8, "{}", v - 1.0);
    }

    #[test]
    fn sech_squared_on_half_line() {
        let rule = SincRule::balanced(64, 1.0, 2.0, FRAC_PI_2);
        let v = sinc_quadrature(&rule, SincMap::HalfLine { a: 0.0 }, |y| 1.0 / y.cosh().powi(2));
        assert!((v - 1.0).abs() < 1e-8, "{}", v - 1.0);
    }

    #[test]
    fn logarithmic_endpoint() {
        let rule = SincRule::balanced(32, 1.0, 2.0, FRAC_PI_2);
        let v = sinc_quadrature(&rule, SincMap::Finite { a: 0.0, b: 1.0 }, |t| -t.ln());
        assert!((v - 1.0).abs() < 1e-6, "{}", v - 1.0);
    }

    #[test]
    fn nodes_stay_inside() {
        let rule = SincRule { h: 0.5, lower: -60, upper: 60 };
        for (t, w) in rule.nodes(SincMap::Finite { a: 1.0, b: 2.0 }) {
            assert!(t > 1.0 && t < 2.0 && w > 0.0);
        }
        for (t, w) in rule.nodes(SincMap::HalfLine { a: 0.5 }) {
            assert!(t > 0.5 && w > 0.0);
        }
    }
}
