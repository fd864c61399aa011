use std::fmt::Write;

use serde::{Deserialize, Serialize};

use pursuit_spectra::cone_spectra::{
    double_cone_eigen, hat_t_table, lambda_critical, tetra_cone_eigen, truncated_cone_eigen, verdict, ConeSpec,
    EigenResult, ExponentBound,
};
use pursuit_spectra::perturbed_domain::{verify_containment, NodalDomainSpec};
use pursuit_spectra::pursuit_mc::{
    fit_tail_exponent, predicted_exponent, simulate, survival_curve, ExponentFit, FitOptions, PursuitConfig,
    SurvivalCurve,
};
use pursuit_spectra::sinc_galerkin::{assemble_matrix, leading_eigen_with, ConvergenceRow, SincDiscretization};

use crate::report::{csv_from_rows, Outcome, Provenance, Report};
use crate::CliError;

fn report<T>(prov: Provenance, command: &str, result: T) -> Report<T> {
    Report { provenance: prov, command: command.into(), result }
}

pub fn table(prov: Provenance, max_n: u32) -> Result<Outcome, CliError> {
    let rows = hat_t_table(max_n)?;
    let mut text = format!("{:>3}  {:>14}  {:>12}\n", "n", "lambda(T^_n-1)", "a(n) >=");
    for r in &rows {
        let _ = writeln!(text, "{:>3}  {:>14.9}  {:>12.8}", r.n, r.lambda_hat, r.a_lower);
    }
    let csv = csv_from_rows(&prov, &rows);
    let mut out = Outcome::new(&report(prov, "table", rows), text);
    out.csv = Some(csv);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub spec: ConeSpec,
    pub eigen: EigenResult,
    /// `μ` of the untruncated double cone, for comparison.
    pub double_cone_mu: f64,
}

pub fn eigen(prov: Provenance, spec: ConeSpec) -> Result<Outcome, CliError> {
    spec.validate()?;
    let eigen = truncated_cone_eigen(&spec)?;
    let r = EigenReport { spec, eigen, double_cone_mu: double_cone_eigen(spec.n, spec.lambda).mu };
    let text = format!(
        "mu({}, {}, {}) = {:.12}\nm = {:.12}\nbracket [{:.12}, {:.12}] after {} evaluations\ndouble cone mu = {:.12}\n",
        spec.n, spec.lambda, spec.r0, eigen.mu, eigen.m, eigen.bracket.0, eigen.bracket.1, eigen.evals, r.double_cone_mu
    );
    Ok(Outcome::new(&report(prov, "eigen", r), text))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalReport {
    pub lambda_cr: f64,
    pub mu: f64,
    pub residual: f64,
}

pub fn lambda_cr(prov: Provenance, tol: f64) -> Result<Outcome, CliError> {
    let lambda_cr = lambda_critical()?;
    let mu = tetra_cone_eigen(lambda_cr)?;
    let r = CriticalReport { lambda_cr, mu, residual: (mu - 8.0).abs() };
    let text = format!("lambda_cr = {:.10}\n|mu(3, lambda_cr, delta(3)) - 8| = {:.3e}\n", lambda_cr, r.residual);
    let mut out = Outcome::new(&report(prov, "lambda-cr", &r), text);
    out.verified = r.residual <= tol;
    Ok(out)
}

pub fn verify_g2(prov: Provenance, spec: NodalDomainSpec, safety: f64) -> Result<Outcome, CliError> {
    let cert = verify_containment(&spec, safety)?;
    let mut text = format!("mu = {}, c = {}, safety = {}\n", spec.mu, spec.c, safety);
    for (t, h) in &cert.checkpoints {
        let _ = writeln!(text, "H(theta = {t:.6}) = {h:.6e}");
    }
    let _ = writeln!(text, "{} intervals, sampled |dh/dtheta| <= {:.6}", cert.intervals.len(), cert.derivative_bound);
    match cert.failure_theta {
        None => text.push_str("containment verified\n"),
        Some(t) => {
            let _ = writeln!(text, "containment FAILED at theta = {t:.6}");
        }
    }
    let passed = cert.passed;
    let mut out = Outcome::new(&report(prov, "verify-g2", cert), text);
    out.verified = passed;
    Ok(out)
}

pub struct SincOptions {
    pub dims: Vec<usize>,
    pub h: Option<f64>,
    pub quad_nodes: Option<usize>,
    pub tol: f64,
}

pub fn sinc(prov: Provenance, opts: &SincOptions) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    for &dim in &opts.dims {
        let base = SincDiscretization::for_dim(dim)?;
        let h = opts.h.unwrap_or(base.h);
        let disc = SincDiscretization::with_options(base.n, h, opts.quad_nodes.unwrap_or(base.n), h);
        let est = leading_eigen_with(&assemble_matrix(&disc)?, opts.tol, 10_000)?;
        rows.push(ConvergenceRow { n: disc.n, dim, h, lambda: est.lambda_upper, mu_m: est.mu_m, iterations: est.iterations });
    }
    let mut text = format!("{:>6}  {:>10}  {:>18}  {:>5}\n", "dim", "h", "lambda", "iter");
    for r in &rows {
        let _ = writeln!(text, "{:>6}  {:>10.6}  {:>18.15}  {:>5}", r.dim, r.h, r.lambda, r.iterations);
    }
    let csv = csv_from_rows(&prov, &rows);
    let mut out = Outcome::new(&report(prov, "sinc", rows), text);
    out.csv = Some(csv);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub config: PursuitConfig,
    pub fit: Option<ExponentFit>,
    /// Why `fit` is absent.
    pub fit_error: Option<String>,
    pub predicted: f64,
    pub censored: usize,
    pub truncated_mean: f64,
    pub curve: SurvivalCurve,
}

#[derive(Serialize)]
struct CurveRow {
    t: f64,
    survival: f64,
    stderr: f64,
    at_risk: usize,
}

pub fn mc(prov: Provenance, config: PursuitConfig, lambda_t2: f64) -> Result<Outcome, CliError> {
    let samples = simulate(&config)?;
    let curve = survival_curve(&samples, 40);
    let (fit, fit_error) = match fit_tail_exponent(&curve, &FitOptions { seed: config.seed, ..FitOptions::default() }) {
        Ok(f) => (Some(f), None),
        Err(pursuit_spectra::Error::InsufficientTail(m)) => (None, Some(m)),
        Err(e) => return Err(e.into()),
    };
    let r = McReport {
        config,
        fit,
        fit_error,
        predicted: predicted_exponent(config.predators, lambda_t2)?,
        censored: samples.censored_count(),
        truncated_mean: samples.truncated_mean(),
        curve,
    };
    let mut text = format!(
        "{} predators, {} paths, dt {}, t_max {}, bridge {}\n",
        config.predators, config.paths, config.dt, config.t_max, config.bridge
    );
    match (&r.fit, &r.fit_error) {
        (Some(f), _) => {
            let _ = writeln!(
                text,
                "fitted a = {:.4}  95% CI [{:.4}, {:.4}]  over t in [{}, {:.1}] ({} points, r2 {:.5})",
                f.a_hat, f.ci_low, f.ci_high, f.window.0, f.window.1, f.points, f.r_squared
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(text, "no fit: {e}");
        }
        _ => {}
    }
    let _ = writeln!(text, "predicted a = {:.4}", r.predicted);
    let _ = writeln!(text, "censored {} of {}; mean of min(tau, t_max) = {:.4}", r.censored, config.paths, r.truncated_mean);
    let rows: Vec<CurveRow> = (0..r.curve.times.len())
        .map(|i| CurveRow {
            t: r.curve.times[i],
            survival: r.curve.survival[i],
            stderr: r.curve.stderr[i],
            at_risk: r.curve.at_risk[i],
        })
        .collect();
    let csv = csv_from_rows(&prov, &rows);
    let svg = survival_svg(&r);
    let mut out = Outcome::new(&report(prov, "mc", r), text);
    out.csv = Some(csv);
    out.svg = Some(svg);
    Ok(out)
}

/// Log-log survival curve with the fitted power law.
fn survival_svg(r: &McReport) -> String {
    let (w, h, pad) = (560.0, 400.0, 50.0);
    let pts: Vec<(f64, f64)> = r
        .curve
        .times
        .iter()
        .zip(&r.curve.survival)
        .filter(|(&t, &s)| t > 0.0 && s > 0.0)
        .map(|(&t, &s)| (t.log10(), s.log10()))
        .collect();
    let (x0, x1) = (pts.first().map_or(0.0, |p| p.0), pts.last().map_or(1.0, |p| p.0));
    let y0 = pts.iter().map(|p| p.1).fold(0.0f64, f64::min).min(-1.0);
    let map = |x: f64, y: f64| (pad + (x - x0) / (x1 - x0).max(1e-9) * (w - 2.0 * pad), pad + y / y0 * (h - 2.0 * pad));
    let line: Vec<String> = pts
        .iter()
        .map(|&(x, y)| {
            let (a, b) = map(x, y);
            format!("{a:.2},{b:.2}")
        })
        .collect();
    let mut svg = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n<title>survival, {} predators</title>\n", r.config.predators);
    let _ = writeln!(svg, r#"<polyline class="survival" points="{}" fill="none" stroke="black"/>"#, line.join(" "));
    if let Some(f) = &r.fit {
        // Anchor the fitted line at the window's lower end.
        let lx = f.window.0.log10();
        let anchor = pts.iter().min_by(|a, b| (a.0 - lx).abs().total_cmp(&(b.0 - lx).abs())).copied();
        if let Some((ax, ay)) = anchor {
            let ux = f.window.1.log10();
            let (a, b) = map(ax, ay);
            let (c, d) = map(ux, ay - f.a_hat * (ux - ax));
            let _ = writeln!(
                svg,
                r#"<line class="fit" x1="{a:.2}" y1="{b:.2}" x2="{c:.2}" y2="{d:.2}" stroke="red" stroke-dasharray="5 3"/>"#
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="14">predicted a = {:.4}</text>"#,
        w - 220.0,
        pad,
        r.predicted
    );
    svg.push_str("</svg>\n");
    svg
}

pub fn verdict_cmd(prov: Provenance, n: u32) -> Result<Outcome, CliError> {
    let v = verdict(n)?;
    let mut text = String::new();
    for s in &v.chain {
        let _ = writeln!(text, "{:<28} {:>2} {:<14.10} {}", s.quantity, s.relation, s.value, s.source);
    }
    let bound = match v.exponent {
        ExponentBound::Exact(a) => format!("a = {a:.8}"),
        ExponentBound::Lower(a) => format!("a >= {a:.8}"),
        ExponentBound::Upper(a) => format!("a <= {a:.8}"),
    };
    let finite = if v.finite { "finite" } else { "infinite" };
    let _ = writeln!(text, "{n} predators: {bound}, expected capture time {finite}");
    Ok(Outcome::new(&report(prov, "verdict", v), text))
}
