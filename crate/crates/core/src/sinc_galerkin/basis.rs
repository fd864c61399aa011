use std::f64::consts::{FRAC_PI_2, PI};

use super::SincDiscretization;

fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        let pt = PI * t;
        pt.sin() / pt
    }
}

/// `S(h, k)(z) = sinc((z − kh)/h)`.
pub fn cardinal_sinc(h: f64, k: i64, z: f64) -> f64 {
    sinc(z / h - k as f64)
}

/// `ln(x/(π/2 − x))`, or `None` at the endpoints.
fn x_map(x: f64) -> Option<f64> {
    (x > 0.0 && x < FRAC_PI_2).then(|| (x / (FRAC_PI_2 - x)).ln())
}

/// `ln sinh y`, or `None` at `y = 0`.
fn y_map(y: f64) -> Option<f64> {
    (y > 0.0 && y.is_finite()).then(|| if y > 20.0 { y - std::f64::consts::LN_2 } else { y.sinh().ln() })
}

/// `α_j(x)` for `j ∈ {−n, …, n, n+1}`; `j = n + 1` is the boundary function
/// carrying the value at `x = π/2`.
pub fn basis_alpha(j: i64, disc: &SincDiscretization, x: f64) -> f64 {
    let n = disc.n as i64;
    debug_assert!((-n..=n + 1).contains(&j));
    if j <= n {
        return x_map(x).map_or(0.0, |s| cardinal_sinc(disc.h, j, s));
    }
    if x >= FRAC_PI_2 {
        return 1.0;
    }
    let Some(s) = x_map(x) else { return x.sin().powi(2) };
    let mut v = x.sin().powi(2);
    for (l, &xl) in (-n..=n).zip(&disc.x_points) {
        v -= xl.sin().powi(2) * cardinal_sinc(disc.h, l, s);
    }
    v
}

/// `β_k(y)` for `k ∈ {−n, …, n, n+1}`; `k = n + 1` carries the value at `y = 0`.
pub fn basis_beta(k: i64, disc: &SincDiscretization, y: f64) -> f64 {
    let n = disc.n as i64;
    debug_assert!((-n..=n + 1).contains(&k));
    if k <= n {
        return y_map(y).map_or(0.0, |s| cardinal_sinc(disc.h, k, s));
    }
    let Some(s) = y_map(y) else {
        return if y <= 0.0 { 1.0 } else { 0.0 };
    };
    let mut v = 1.0 / y.cosh();
    for (l, &yl) in (-n..=n).zip(&disc.y_points) {
        v -= cardinal_sinc(disc.h, l, s) / yl.cosh();
    }
    v
}

/// All `2n + 2` values `α_j(x)` in index order `−n, …, n, n+1`.
pub(crate) fn alpha_row(disc: &SincDiscretization, x: f64) -> Vec<f64> {
    let n = disc.n as i64;
    let mut out: Vec<f64> = (-n..=n).map(|j| basis_alpha(j, disc, x)).collect();
    let bnd = if x >= FRAC_PI_2 {
        1.0
    } else {
        x.sin().powi(2) - disc.x_points.iter().zip(&out).map(|(xl, a)| xl.sin().powi(2) * a).sum::<f64>()
    };
    out.push(bnd);
    out
}

pub(crate) fn beta_row(disc: &SincDiscretization, y: f64) -> Vec<f64> {
    let n = disc.n as i64;
    let mut out: Vec<f64> = (-n..=n).map(|k| basis_beta(k, disc, y)).collect();
    let bnd = if y <= 0.0 {
        1.0
    } else {
        1.0 / y.cosh() - disc.y_points.iter().zip(&out).map(|(yl, b)| b / yl.cosh()).sum::<f64>()
    };
    out.push(bnd);
    out
}
