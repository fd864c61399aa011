//! SVG sketches in the stereographic plane about a cone vertex.

use std::f64::consts::PI;
use std::fmt::Write;

use pursuit_spectra::cone_spectra::vertex_angle_delta;
use pursuit_spectra::perturbed_domain::{
    h_function, polar_to_unit, stereo, t2_boundary_beta, t2_boundary_radius, NodalDomainSpec, LUNE_ANGLE,
};
use pursuit_spectra::Result;

const SIZE: f64 = 480.0;

struct Canvas {
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(extent: f64) -> Self {
        Canvas { scale: 0.45 * SIZE / extent, body: String::new() }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (0.5 * SIZE + self.scale * x, 0.5 * SIZE - self.scale * y)
    }

    fn polyline(&mut self, pts: &[(f64, f64)], class: &str, style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (a, b) = self.px(x, y);
                format!("{a:.2},{b:.2}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline class="{class}" points="{}" fill="none" stroke="black" {style}/>"#,
            coords.join(" ")
        );
    }

    fn polygon(&mut self, pts: &[(f64, f64)], class: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (a, b) = self.px(x, y);
                format!("{a:.2},{b:.2}")
            })
            .collect();
        let _ = writeln!(self.body, r##"<polygon class="{class}" points="{}" fill="#dde6f0" stroke="none"/>"##, coords.join(" "));
    }

    fn label(&mut self, x: f64, y: f64, text: &str) {
        let (a, b) = self.px(x, y);
        let _ = writeln!(self.body, r#"<text x="{a:.2}" y="{b:.2}" font-family="serif" font-size="16">{text}</text>"#);
    }

    fn finish(self, title: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<title>{title}</title>\n{}</svg>\n",
            self.body
        )
    }
}

fn polar(rho: f64, theta: f64) -> (f64, f64) {
    (rho * theta.cos(), rho * theta.sin())
}

fn arc(rho: impl Fn(f64) -> f64, from: f64, to: f64, samples: usize) -> Vec<(f64, f64)> {
    (0..=samples)
        .map(|i| {
            let t = from + (to - from) * i as f64 / samples as f64;
            polar(rho(t), t)
        })
        .collect()
}

fn to_plane(v: [f64; 3]) -> (f64, f64) {
    let r = v[2].clamp(-1.0, 1.0).acos();
    let rho = (0.5 * r).tan();
    polar(rho, v[1].atan2(v[0]))
}

fn geodesic(a: [f64; 3], b: [f64; 3], samples: usize) -> Vec<(f64, f64)> {
    (0..=samples)
        .map(|i| {
            let t = i as f64 / samples as f64;
            let p: Vec<f64> = (0..3).map(|k| (1.0 - t) * a[k] + t * b[k]).collect();
            let n = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            to_plane([p[0] / n, p[1] / n, p[2] / n])
        })
        .collect()
}

fn normalised_sum(vs: &[[f64; 3]]) -> [f64; 3] {
    let mut s = [0.0; 3];
    for v in vs {
        for k in 0..3 {
            s[k] += v[k];
        }
    }
    let n = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    [s[0] / n, s[1] / n, s[2] / n]
}

/// The arc `T₁` on the equator and the lune `D₂` over it.
pub fn figure_domains() -> String {
    let mut c = Canvas::new(2.2);
    let reach = 2.2;
    let mut wedge = vec![(0.0, 0.0)];
    wedge.extend(arc(|_| reach, 0.0, LUNE_ANGLE, 64));
    c.polygon(&wedge, "d2");
    c.polyline(&arc(|_| 1.0, 0.0, 2.0 * PI, 128), "equator", r#"stroke-dasharray="4 4""#);
    c.polyline(&[(0.0, 0.0), polar(reach, 0.0)], "d2-edge", "");
    c.polyline(&[(0.0, 0.0), polar(reach, LUNE_ANGLE)], "d2-edge", "");
    c.polyline(&arc(|_| 1.0, 0.0, LUNE_ANGLE, 64), "t1", r#"stroke-width="3""#);
    let (x, y) = polar(1.08, LUNE_ANGLE / 2.0);
    c.label(x, y, "T₁");
    let (x, y) = polar(1.7, LUNE_ANGLE / 2.0);
    c.label(x, y, "D₂");
    c.finish("T1 and D2")
}

/// First zero of `H(·, θ)` along the ray, or `None` if `H > 0` up to the antipode.
fn nodal_radius(spec: &NodalDomainSpec, theta: f64) -> Result<Option<f64>> {
    let steps = 600;
    let top = PI - 1e-3;
    let mut prev = (1e-3, h_function(spec, 1e-3, theta)?);
    for i in 1..=steps {
        let r = 1e-3 + (top - 1e-3) * i as f64 / steps as f64;
        let h = h_function(spec, r, theta)?;
        if h <= 0.0 {
            let (mut lo, mut hi) = (prev.0, r);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if h_function(spec, mid, theta)? > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        prev = (r, h);
    }
    Ok(None)
}

/// `T₂` (dashed), the nodal domain `G₂` (solid) and the circle `r = δ(2)`.
pub fn figure_arcs(spec: &NodalDomainSpec) -> Result<String> {
    let hat = stereo(vertex_angle_delta(2))?;
    let mut c = Canvas::new(hat * 1.1);
    let mut g2 = vec![(0.0, 0.0)];
    for i in 0..=96 {
        let t = LUNE_ANGLE * i as f64 / 96.0;
        let rho = match nodal_radius(spec, t)? {
            Some(r) => stereo(r)?.min(hat * 1.05),
            None => hat * 1.05,
        };
        g2.push(polar(rho, t));
    }
    g2.push((0.0, 0.0));
    c.polyline(&g2, "g2", r#"stroke-width="2""#);
    let mut t2 = vec![(0.0, 0.0)];
    t2.extend(arc(t2_boundary_beta, 0.0, LUNE_ANGLE, 96));
    t2.push((0.0, 0.0));
    c.polyline(&t2, "t2", r#"stroke-dasharray="6 4""#);
    c.polyline(&arc(|_| hat, 0.0, LUNE_ANGLE, 96), "t2hat", r#"stroke-dasharray="1 3""#);
    let (x, y) = polar(0.5 * t2_boundary_beta(LUNE_ANGLE / 2.0), LUNE_ANGLE / 2.0);
    c.label(x, y, "T₂");
    Ok(c.finish("T2, G2 and the circle r = delta(2)"))
}

/// `T₂` cut into six congruent triangles by the geodesics from its centre.
pub fn figure_triangles() -> String {
    let mut c = Canvas::new(t2_boundary_beta(0.0) * 1.1);
    let r_edge = t2_boundary_radius(0.0);
    let verts = [polar_to_unit(0.0, 0.0), polar_to_unit(r_edge, 0.0), polar_to_unit(r_edge, LUNE_ANGLE)];
    let centre = normalised_sum(&verts);
    for i in 0..3 {
        let (a, b) = (verts[i], verts[(i + 1) % 3]);
        c.polyline(&geodesic(a, b, 64), "t2", r#"stroke-width="2""#);
        c.polyline(&geodesic(centre, a, 64), "subdivision", "");
        c.polyline(&geodesic(centre, normalised_sum(&[a, b]), 64), "subdivision", "");
    }
    c.finish("six subtriangles of T2")
}
