use std::path::PathBuf;
use std::process::{Command, Output};

use pursuit_spectra::cone_spectra::{HatTableRow, Verdict};
use serde::Deserialize;

#[derive(Deserialize)]
struct Report<T> {
    provenance: serde_json::Value,
    command: String,
    result: T,
}

fn pursuit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pursuit")).args(args).env_remove("PURSUIT_OUT_DIR").output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn table_six_matches_reference_rows() {
    let out = pursuit(&["table", "6", "--format", "json"]);
    assert!(out.status.success());
    let r: Report<Vec<HatTableRow>> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.command, "table");
    assert_eq!(r.provenance["seed"], 2024);
    assert_eq!(r.provenance["config_hash"].as_str().unwrap().len(), 64);
    let lam = [2.25, 5.00463581, 7.884040724, 10.77018488, 13.6203196];
    let a = [0.75, 0.89614957, 0.99030540, 1.05417466, 1.09882819];
    for (i, row) in r.result.iter().enumerate() {
        assert!((row.lambda_hat - lam[i]).abs() < 1e-6);
        assert!((row.a_lower - a[i]).abs() < 1e-7);
    }
}

#[test]
fn verdict_four_is_finite() {
    let out = pursuit(&["verdict", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Report<Verdict> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.result.finite);
    assert!((r.result.exponent.value() - 1.00007318).abs() < 1e-7 && r.result.exponent.value() > 1.0);
}

#[test]
fn large_perturbation_fails_verification() {
    let out = pursuit(&["verify-g2", "--c", "0.1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAILED"));
    assert_eq!(pursuit(&["verify-g2"]).status.code(), Some(0));
}

#[test]
fn invalid_config_exits_two() {
    let dir = scratch("bad_config");
    let path = dir.join("run.toml");
    std::fs::write(&path, "seed = 1\nunknown_key = 3\n").unwrap();
    let out = pursuit(&["table", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(pursuit(&["eigen", "--n", "2", "--lambda", "-1"]).status.code(), Some(2));
    assert_eq!(pursuit(&["verdict", "4", "--format", "svg"]).status.code(), Some(2));
}

#[test]
fn config_values_feed_the_hash_and_flags_override() {
    let dir = scratch("config_hash");
    let path = dir.join("run.toml");
    std::fs::write(&path, "seed = 11\nformat = \"json\"\n").unwrap();
    let from_file = pursuit(&["table", "3", "--config", path.to_str().unwrap()]);
    let r: Report<Vec<HatTableRow>> = serde_json::from_slice(&from_file.stdout).unwrap();
    assert_eq!(r.provenance["seed"], 11);
    let flagged = pursuit(&["table", "3", "--config", path.to_str().unwrap(), "--seed", "12"]);
    let s: Report<Vec<HatTableRow>> = serde_json::from_slice(&flagged.stdout).unwrap();
    assert_eq!(s.provenance["seed"], 12);
    assert_ne!(r.provenance["config_hash"], s.provenance["config_hash"]);
}

#[test]
fn mc_output_is_bit_stable() {
    let args = ["mc", "--predators", "1", "--paths", "2000", "--t-max", "100", "--format", "csv"];
    let (a, b) = (pursuit(&args), pursuit(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("t,survival,stderr,at_risk"));
}

#[test]
fn figures_and_out_dir() {
    let dir = scratch("figures");
    let out = pursuit(&["figures", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    for name in ["figure1_domains.svg", "figure2_arcs.svg", "figure3_triangles.svg"] {
        let svg = std::fs::read_to_string(dir.join(name)).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"), "{name}");
    }
    let env_dir = scratch("env_out");
    let out = Command::new(env!("CARGO_BIN_EXE_pursuit"))
        .args(["lambda-cr", "--format", "json"])
        .env("PURSUIT_OUT_DIR", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(env_dir.join("lambda-cr.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert!((v["result"]["lambda_cr"].as_f64().unwrap() - 5.101267527).abs() < 1e-6);
}
