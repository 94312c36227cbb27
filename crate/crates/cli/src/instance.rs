//! JSON instance files.
//!
//! ```json
//! {"schema": "mmp-bench/1", "type": "wsr", "K": 1,
//!  "alpha": [1.0], "beta": [[0.0]], "sigma2": 0.01, "P": [1.0]}
//! ```

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use mmp_core::problems::{
    aloha_problem, gee_problem, wmee_problem, wsee_problem, wsr_problem, AlohaNetwork, EnergyModel,
    InterferenceNetwork, Representation,
};
use mmp_core::ProblemInstance;
use serde::Deserialize;

use crate::error::{BenchError, Result};

pub const SCHEMA: &str = "mmp-bench/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Wsr,
    Gee,
    Wsee,
    Wmee,
    Aloha,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Wsr => "wsr",
            Self::Gee => "gee",
            Self::Wsee => "wsee",
            Self::Wmee => "wmee",
            Self::Aloha => "aloha",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wsr" => Ok(Self::Wsr),
            "gee" => Ok(Self::Gee),
            "wsee" => Ok(Self::Wsee),
            "wmee" => Ok(Self::Wmee),
            "aloha" => Ok(Self::Aloha),
            other => Err(BenchError::field("type", format!("unknown problem type `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum CircuitPower {
    Total(f64),
    PerUser(Vec<f64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    // checked before deserializing
    #[serde(rename = "schema")]
    _schema: String,
    #[serde(rename = "type")]
    _kind: String,
    #[serde(rename = "K")]
    k: usize,
    alpha: Option<Vec<f64>>,
    beta: Option<Vec<Vec<f64>>>,
    sigma2: Option<f64>,
    #[serde(rename = "P")]
    power: Option<Vec<f64>>,
    w: Option<Vec<f64>>,
    rmin: Option<Vec<f64>>,
    phi: Option<Vec<f64>>,
    #[serde(rename = "Pc")]
    pc: Option<CircuitPower>,
    #[serde(rename = "B")]
    bandwidth: Option<f64>,
    c: Option<Vec<f64>>,
    interferers: Option<Vec<Vec<usize>>>,
}

/// A validated instance file.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceDoc {
    Wsr(InterferenceNetwork),
    Energy {
        kind: ProblemKind,
        net: InterferenceNetwork,
        energy: EnergyModel,
    },
    Aloha(AlohaNetwork),
}

fn required<T>(value: Option<T>, field: &str) -> Result<T> {
    value.ok_or_else(|| BenchError::field(field, "missing"))
}

fn vector(value: Option<Vec<f64>>, field: &str, k: usize) -> Result<Vec<f64>> {
    let v = required(value, field)?;
    if v.len() != k {
        return Err(BenchError::field(field, format!("expected {k} entries, found {}", v.len())));
    }
    Ok(v)
}

fn optional_vector(value: Option<Vec<f64>>, field: &str, k: usize, fill: f64) -> Result<Vec<f64>> {
    match value {
        None => Ok(vec![fill; k]),
        some => vector(some, field, k),
    }
}

/// Maps a serde error message like "missing field `alpha`" to the field name.
fn field_of(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "document".to_string())
}

impl RawDocument {
    fn network(&self) -> Result<InterferenceNetwork> {
        let k = self.k;
        let alpha = vector(self.alpha.clone(), "alpha", k)?;
        let beta = required(self.beta.clone(), "beta")?;
        if beta.len() != k || beta.iter().any(|r| r.len() != k) {
            return Err(BenchError::field("beta", format!("expected a {k}x{k} matrix")));
        }
        let net = InterferenceNetwork {
            alpha,
            beta,
            sigma2: required(self.sigma2, "sigma2")?,
            power: vector(self.power.clone(), "P", k)?,
            weights: optional_vector(self.w.clone(), "w", k, 1.0)?,
            rmin: optional_vector(self.rmin.clone(), "rmin", k, 0.0)?,
        };
        net.validate().map_err(|e| BenchError::field("network", e.to_string()))?;
        Ok(net)
    }

    fn energy(&self, kind: ProblemKind) -> Result<EnergyModel> {
        let k = self.k;
        let phi = vector(self.phi.clone(), "phi", k)?;
        let bandwidth = self.bandwidth.unwrap_or(1.0);
        let model = match (required(self.pc.clone(), "Pc")?, kind) {
            (CircuitPower::Total(pc), ProblemKind::Gee) => EnergyModel::new(phi, pc, bandwidth),
            (CircuitPower::PerUser(_), ProblemKind::Gee) => {
                return Err(BenchError::field("Pc", "expected a number for type gee"));
            }
            (CircuitPower::Total(pc), _) => {
                EnergyModel::new(phi, pc * k as f64, bandwidth).with_user_circuit_power(vec![pc; k])
            }
            (CircuitPower::PerUser(pcs), _) => {
                if pcs.len() != k {
                    return Err(BenchError::field("Pc", format!("expected {k} entries, found {}", pcs.len())));
                }
                let total = pcs.iter().sum();
                EnergyModel::new(phi, total, bandwidth).with_user_circuit_power(pcs)
            }
        };
        model.validate(k).map_err(|e| BenchError::field("energy", e.to_string()))?;
        Ok(model)
    }

    fn aloha(&self) -> Result<AlohaNetwork> {
        let k = self.k;
        let c = vector(self.c.clone(), "c", k)?;
        let rmin = optional_vector(self.rmin.clone(), "rmin", k, 0.0)?;
        let net = match self.interferers.clone() {
            Some(sets) => {
                if sets.len() != k {
                    return Err(BenchError::field(
                        "interferers",
                        format!("expected {k} entries, found {}", sets.len()),
                    ));
                }
                AlohaNetwork::new(c, sets, rmin)
            }
            None => AlohaNetwork::full_interference(c, rmin),
        };
        net.map_err(|e| BenchError::field("network", e.to_string()))
    }
}

impl InstanceDoc {
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| BenchError::Parse {
            field: "document".into(),
            line: Some(e.line()),
            column: Some(e.column()),
            message: e.to_string(),
        })?;
        match value.get("schema").and_then(|s| s.as_str()) {
            Some(SCHEMA) => {}
            Some(other) => {
                return Err(BenchError::SchemaVersion {
                    found: other.to_string(),
                    expected: SCHEMA,
                })
            }
            None => return Err(BenchError::field("schema", "missing")),
        }
        let kind_text = value
            .get("type")
            .and_then(|t| t.as_str())
            .ok_or_else(|| BenchError::field("type", "missing"))?;
        let kind: ProblemKind = kind_text.parse()?;
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
            let message = e.to_string();
            BenchError::Parse {
                field: field_of(&message),
                line: Some(e.line()),
                column: Some(e.column()),
                message,
            }
        })?;
        if raw.k == 0 {
            return Err(BenchError::field("K", "must be at least 1"));
        }
        Ok(match kind {
            ProblemKind::Wsr => Self::Wsr(raw.network()?),
            ProblemKind::Gee | ProblemKind::Wsee | ProblemKind::Wmee => Self::Energy {
                kind,
                net: raw.network()?,
                energy: raw.energy(kind)?,
            },
            ProblemKind::Aloha => Self::Aloha(raw.aloha()?),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            Self::Wsr(_) => ProblemKind::Wsr,
            Self::Energy { kind, .. } => *kind,
            Self::Aloha(_) => ProblemKind::Aloha,
        }
    }

    /// Builds the problem. `representation` only matters for `wsr`; the other
    /// types have a single representation.
    pub fn build(&self, representation: Representation) -> Result<ProblemInstance> {
        Ok(match self {
            Self::Wsr(net) => wsr_problem(net, representation)?,
            Self::Energy { kind, net, energy } => match kind {
                ProblemKind::Gee => gee_problem(net, energy)?,
                ProblemKind::Wsee => wsee_problem(net, energy)?,
                _ => wmee_problem(net, energy)?,
            },
            Self::Aloha(net) => aloha_problem(net)?,
        })
    }
}

/// Reads an instance file and builds its problem with the SINR-form rates.
pub fn load_instance(path: &Path) -> Result<ProblemInstance> {
    InstanceDoc::read(path)?.build(Representation::Mmp)
}
