//! Whether the expected capture time with `n` predators is finite, with the
//! numeric chain that decides it.

use serde::{Deserialize, Serialize};

use super::{
    decay_exponent, double_cone_eigen, hat_t_table, lambda_critical, rayleigh_bound_t2, truncated_cone_eigen,
    vertex_angle_delta, ConeSpec, LAMBDA_G2, LAMBDA_T1,
};
use crate::error::{invalid, Error, Result};
use crate::perturbed_domain::{verify_containment, NodalDomainSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub quantity: String,
    /// `"="`, `"<="` or `">="`.
    pub relation: String,
    pub value: f64,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ExponentBound {
    Exact(f64),
    Upper(f64),
    Lower(f64),
}

impl ExponentBound {
    pub fn value(&self) -> f64 {
        match *self {
            ExponentBound::Exact(v) | ExponentBound::Upper(v) | ExponentBound::Lower(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: u32,
    pub finite: bool,
    pub exponent: ExponentBound,
    pub chain: Vec<ChainStep>,
}

fn step(quantity: &str, relation: &str, value: f64, source: &str) -> ChainStep {
    ChainStep { quantity: quantity.into(), relation: relation.into(), value, source: source.into() }
}

pub fn verdict(n: u32) -> Result<Verdict> {
    let (exponent, chain) = match n {
        0 => return Err(invalid("n must be at least 1")),
        1 => {
            let a = decay_exponent(1, 1.0);
            (ExponentBound::Exact(a), vec![step("lambda1(D1)", "=", 1.0, "half-circle"), step("a(1)", "=", a, "decay_exponent")])
        }
        2 => {
            let d = double_cone_eigen(2, LAMBDA_T1).mu;
            let a = decay_exponent(2, d);
            (
                ExponentBound::Exact(a),
                vec![
                    step("lambda1(T1)", "=", LAMBDA_T1, "arc of length 2pi/3"),
                    step("lambda1(D2)", "=", d, "double_cone_eigen"),
                    step("a(2)", "=", a, "decay_exponent"),
                ],
            )
        }
        3 => {
            let q = rayleigh_bound_t2()?;
            let d = double_cone_eigen(3, q).mu;
            let a = decay_exponent(3, d);
            (
                ExponentBound::Upper(a),
                vec![
                    step("lambda1(T2)", "<=", q, "rayleigh_bound_t2"),
                    step("lambda1(D3)", "<=", d, "double_cone_eigen"),
                    step("a(3)", "<=", a, "decay_exponent"),
                ],
            )
        }
        4 => {
            let cert = verify_containment(&NodalDomainSpec::default(), 2.0)?;
            if !cert.passed {
                return Err(Error::VerificationFailed(format!(
                    "H <= 0 near theta = {:?} on the third side of T2",
                    cert.failure_theta
                )));
            }
            let lcr = lambda_critical()?;
            let t3 = truncated_cone_eigen(&ConeSpec::new(3, LAMBDA_G2, vertex_angle_delta(3))?)?.mu;
            let d4 = double_cone_eigen(4, t3).mu;
            let a = decay_exponent(4, d4);
            (
                ExponentBound::Lower(a),
                vec![
                    step("lambda1(T2)", ">=", LAMBDA_G2, "verify_containment"),
                    step("lambda_cr", "=", lcr, "lambda_critical"),
                    step("lambda1(T3)", ">=", t3, "truncated_cone_eigen"),
                    step("lambda1(D4)", ">=", d4, "double_cone_eigen"),
                    step("a(4)", ">=", a, "decay_exponent"),
                ],
            )
        }
        _ => {
            let row = *hat_t_table(n)?.last().unwrap();
            let d = double_cone_eigen(n, row.lambda_hat).mu;
            (
                ExponentBound::Lower(row.a_lower),
                vec![
                    step(&format!("lambda1(T{})", n - 1), ">=", row.lambda_hat, "hat_t_table"),
                    step(&format!("lambda1(D{n})"), ">=", d, "double_cone_eigen"),
                    step(&format!("a({n})"), ">=", row.a_lower, "decay_exponent"),
                ],
            )
        }
    };
    let finite = match exponent {
        ExponentBound::Lower(a) => a > 1.0,
        ExponentBound::Exact(a) | ExponentBound::Upper(a) => {
            if a >= 1.0 {
                return Err(Error::VerificationFailed(format!("exponent bound {a} does not decide n = {n}")));
            }
            false
        }
    };
    Ok(Verdict { n, finite, exponent, chain })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensions_are_infinite() {
        let v = verdict(1).unwrap();
        assert!(!v.finite);
        assert_eq!(v.exponent, ExponentBound::Exact(0.5));
        let v = verdict(2).unwrap();
        assert_eq!(v.exponent, ExponentBound::Exact(0.75));
        let v = verdict(3).unwrap();
        assert!(!v.finite);
        assert!(matches!(v.exponent, ExponentBound::Upper(a) if a < 1.0));
        assert_eq!(v.chain.last().unwrap().quantity, "a(3)");
    }

    #[test]
    fn four_predators() {
        let v = verdict(4).unwrap();
        assert!(v.finite);
        let a = v.exponent.value();
        assert!((a - 1.00007318).abs() < 1e-7, "{a}");
        assert_eq!(v.chain[0].source, "verify_containment");
    }

    #[test]
    fn table_regime() {
        let v = verdict(6).unwrap();
        assert!(v.finite);
        assert!((v.exponent.value() - 1.09882819).abs() < 1e-7);
        assert!(verdict(5).unwrap().finite);
        assert!(verdict(0).is_err());
    }
}
