use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
            Format::Text => "txt",
        }
    }
}

/// Contents of a `--config` TOML file. Every key is optional; flags win.
///
/// ```toml
/// format = "json"
/// seed = 7
/// [mc]
/// predators = 3
/// paths = 100000
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub threads: Option<usize>,
    #[serde(default)]
    pub mc: McSection,
    #[serde(default)]
    pub sinc: SincSection,
    #[serde(default)]
    pub verify_g2: G2Section,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    pub predators: Option<u32>,
    pub paths: Option<usize>,
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
    pub bridge: Option<bool>,
    pub lambda_t2: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SincSection {
    pub dims: Option<Vec<usize>>,
    pub h: Option<f64>,
    pub quad_nodes: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G2Section {
    pub safety: Option<f64>,
    pub c: Option<f64>,
    pub mu: Option<f64>,
}

pub fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Hex SHA-256 of the canonical JSON of the resolved parameters.
pub fn config_hash(resolved: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(resolved).expect("resolved config serialises");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}
