use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// SHA-256 of the resolved command parameters.
    pub config_hash: String,
    pub seed: u64,
}

impl Provenance {
    pub fn new(config_hash: String, seed: u64) -> Self {
        Provenance { tool: "pursuit".into(), version: env!("CARGO_PKG_VERSION").into(), config_hash, seed }
    }

    pub fn comment(&self, prefix: &str) -> String {
        format!("{prefix} {} {} config {} seed {}", self.tool, self.version, self.config_hash, self.seed)
    }
}

/// JSON envelope of every command's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub provenance: Provenance,
    pub command: String,
    pub result: T,
}

/// Rendered outputs of one command; `None` where a format does not apply.
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub csv: Option<String>,
    pub svg: Option<String>,
    /// `false` when a verification the command performs did not pass.
    pub verified: bool,
}

impl Outcome {
    pub fn new<T: Serialize>(report: &Report<T>, body: String) -> Self {
        Outcome {
            json: serde_json::to_string_pretty(report).expect("report serialises") + "\n",
            text: format!("{}\n{body}", report.provenance.comment("#")),
            csv: None,
            svg: None,
            verified: true,
        }
    }
}

pub fn csv_from_rows<R: Serialize>(prov: &Provenance, rows: &[R]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("row serialises");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv");
    format!("{}\n{body}", prov.comment("#"))
}
