//! `pursuit`: tables, eigenvalues, certificates, simulations and figures.
//!
//! Exit status: 0 success, 1 verification failed, 2 invalid configuration,
//! 3 solver or I/O failure.

mod commands;
mod config;
mod figures;
mod report;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use config::{config_hash, Format, RunConfig};
use pursuit_spectra::cone_spectra::ConeSpec;
use pursuit_spectra::perturbed_domain::NodalDomainSpec;
use pursuit_spectra::pursuit_mc::PursuitConfig;
use report::{Outcome, Provenance};

const DEFAULT_SEED: u64 = 2024;
/// Sinc estimate of `λ₁(T₂)` at dimension 1024.
const LAMBDA_T2: f64 = 5.159;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Solver(#[from] pursuit_spectra::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        use pursuit_spectra::Error as E;
        match self {
            CliError::Config(_) | CliError::Solver(E::InvalidParameter(_)) => 2,
            CliError::Verification(_) | CliError::Solver(E::VerificationFailed(_)) => 1,
            _ => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "pursuit", version, about = "Spherical cone eigenvalues and Brownian pursuit exponents")]
struct Cli {
    /// TOML file of defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (a directory for `figures`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Residual threshold for `lambda-cr`, power-iteration tolerance for `sinc`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for outputs when `--out` is not given.
    #[arg(long, global = true, env = "PURSUIT_OUT_DIR", hide_env_values = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Comparison-domain eigenvalues and exponent lower bounds.
    Table {
        #[arg(default_value_t = 6)]
        max_n: u32,
    },
    /// First eigenvalue of a truncated cone.
    Eigen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = PI)]
        r0: f64,
    },
    /// The base eigenvalue at which the tetrahedral cone reaches 8.
    LambdaCr,
    /// Containment certificate for the perturbed nodal domain.
    VerifyG2 {
        #[arg(long)]
        safety: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Sinc-Galerkin convergence study.
    Sinc {
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        quad_nodes: Option<usize>,
    },
    /// Monte Carlo survival curve and tail fit.
    Mc {
        #[arg(long)]
        predators: Option<u32>,
        #[arg(long)]
        paths: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        no_bridge: bool,
        #[arg(long)]
        lambda_t2: Option<f64>,
    },
    /// Finiteness of the expected capture time with `n` predators.
    Verdict { n: u32 },
    /// Write the three domain sketches as SVG.
    Figures,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Table { .. } => "table",
            Command::Eigen { .. } => "eigen",
            Command::LambdaCr => "lambda-cr",
            Command::VerifyG2 { .. } => "verify-g2",
            Command::Sinc { .. } => "sinc",
            Command::Mc { .. } => "mc",
            Command::Verdict { .. } => "verdict",
            Command::Figures => "figures",
        }
    }

    /// Fills unset options from the config file, then defaults.
    fn resolve(self, cfg: &RunConfig) -> Self {
        match self {
            Command::VerifyG2 { safety, c, mu } => Command::VerifyG2 {
                safety: safety.or(cfg.verify_g2.safety).or(Some(2.0)),
                c: c.or(cfg.verify_g2.c).or(Some(NodalDomainSpec::default().c)),
                mu: mu.or(cfg.verify_g2.mu).or(Some(NodalDomainSpec::default().mu)),
            },
            Command::Sinc { dims, h, quad_nodes } => Command::Sinc {
                dims: dims.or_else(|| cfg.sinc.dims.clone()).or_else(|| Some(vec![16, 36, 64, 100, 196])),
                h: h.or(cfg.sinc.h),
                quad_nodes: quad_nodes.or(cfg.sinc.quad_nodes),
            },
            Command::Mc { predators, paths, dt, t_max, no_bridge, lambda_t2 } => Command::Mc {
                predators: predators.or(cfg.mc.predators).or(Some(2)),
                paths: paths.or(cfg.mc.paths).or(Some(100_000)),
                dt: dt.or(cfg.mc.dt).or(Some(0.01)),
                t_max: t_max.or(cfg.mc.t_max).or(Some(1e3)),
                no_bridge: no_bridge || cfg.mc.bridge == Some(false),
                lambda_t2: lambda_t2.or(cfg.mc.lambda_t2).or(Some(LAMBDA_T2)),
            },
            other => other,
        }
    }
}

#[derive(Serialize)]
struct Resolved<'a> {
    command: &'a Command,
    seed: u64,
    tol: f64,
    format: Format,
}

fn default_tol(cmd: &Command) -> f64 {
    match cmd {
        Command::Sinc { .. } => 1e-12,
        _ => 1e-8,
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file_cfg = match &cli.config {
        Some(p) => config::load(p)?,
        None => RunConfig::default(),
    };
    let command = cli.command.resolve(&file_cfg);
    let format = cli.format.or(file_cfg.format).unwrap_or(Format::Text);
    let seed = cli.seed.or(file_cfg.seed).unwrap_or(DEFAULT_SEED);
    let tol = cli.tol.or(file_cfg.tol).unwrap_or_else(|| default_tol(&command));
    if !(tol > 0.0) {
        return Err(CliError::Config(format!("tol = {tol} must be positive")));
    }
    if let Some(t) = cli.threads.or(file_cfg.threads) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Config(format!("threads: {e}")))?;
    }
    let out = cli.out.or(file_cfg.out);
    let name = command.name();
    let prov = Provenance::new(config_hash(&Resolved { command: &command, seed, tol, format }), seed);

    let outcome: Outcome = match command {
        Command::Table { max_n } => commands::table(prov, max_n)?,
        Command::Eigen { n, lambda, r0 } => commands::eigen(prov, ConeSpec { n, lambda, r0 })?,
        Command::LambdaCr => commands::lambda_cr(prov, tol)?,
        Command::VerifyG2 { safety, c, mu } => {
            let spec = NodalDomainSpec { mu: mu.unwrap_or(5.102), c: c.unwrap_or(0.0003), ..NodalDomainSpec::default() };
            commands::verify_g2(prov, spec, safety.unwrap_or(2.0))?
        }
        Command::Sinc { dims, h, quad_nodes } => {
            commands::sinc(prov, &commands::SincOptions { dims: dims.unwrap_or_default(), h, quad_nodes, tol })?
        }
        Command::Mc { predators, paths, dt, t_max, no_bridge, lambda_t2 } => {
            let mut cfg = PursuitConfig::new(predators.unwrap_or(2), paths.unwrap_or(100_000), seed);
            cfg.dt = dt.unwrap_or(cfg.dt);
            cfg.t_max = t_max.unwrap_or(cfg.t_max);
            cfg.bridge = !no_bridge;
            commands::mc(prov, cfg, lambda_t2.unwrap_or(LAMBDA_T2))?
        }
        Command::Verdict { n } => commands::verdict_cmd(prov, n)?,
        Command::Figures => {
            let dir = out.or(cli.out_dir).unwrap_or_else(|| PathBuf::from("figures"));
            write_figures(&dir)?;
            return Ok(());
        }
    };

    let body = match format {
        Format::Json => outcome.json,
        Format::Text => outcome.text,
        Format::Csv => outcome.csv.ok_or_else(|| CliError::Config(format!("{name} has no csv output")))?,
        Format::Svg => outcome.svg.ok_or_else(|| CliError::Config(format!("{name} has no svg output")))?,
    };
    let target = out.or_else(|| cli.out_dir.map(|d| d.join(format!("{name}.{}", format.extension()))));
    match target {
        Some(path) => write_file(&path, &body)?,
        None => print!("{body}"),
    }
    if !outcome.verified {
        return Err(CliError::Verification(format!("{name} did not verify")));
    }
    Ok(())
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, body)?;
    Ok(())
}

fn write_figures(dir: &Path) -> Result<(), CliError> {
    let files = [
        ("figure1_domains.svg", figures::figure_domains()),
        ("figure2_arcs.svg", figures::figure_arcs(&NodalDomainSpec::default())?),
        ("figure3_triangles.svg", figures::figure_triangles()),
    ];
    for (name, svg) in files {
        let path = dir.join(name);
        write_file(&path, &svg)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pursuit: {e}");
            ExitCode::from(e.code())
        }
    }
}
