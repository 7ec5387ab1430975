//! Instance and result file formats.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::{Cost, EdgeId, Graph, NodeId, Tree};
use crate::rec::TraceEvent;
use crate::robust::{AlphaSource, IntervalInstance, ScenarioModel};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: NodeId,
    pub v: NodeId,
    #[serde(rename = "C")]
    pub first: Cost,
    #[serde(rename = "c")]
    pub nominal: Cost,
    #[serde(rename = "d", default)]
    pub deviation: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
    pub k: usize,
    pub model: ScenarioModel,
    #[serde(default)]
    pub gamma: Cost,
}

/// A rejected instance, with the place in the input that caused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

fn at(location: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError {
        location: location.into(),
        message: message.into(),
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file: InstanceFile = serde_json::from_str(text)
            .map_err(|e| at(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path).map_err(|e| at(path.display().to_string(), e.to_string()))?;
        Self::parse(&text).map_err(|e| at(format!("{}: {}", path.display(), e.location), e.message))
    }

    pub fn validate(&self) -> Result<(), ParseError> {
        if self.n == 0 {
            return Err(at("n", "graph needs at least one node"));
        }
        for (i, e) in self.edges.iter().enumerate() {
            for (name, node) in [("u", e.u), ("v", e.v)] {
                if node >= self.n {
                    return Err(at(format!("edges[{i}].{name}"), format!("node {node} out of range for n = {}", self.n)));
                }
            }
            if e.u == e.v {
                return Err(at(format!("edges[{i}]"), format!("self-loop on node {}", e.u)));
            }
            for (name, value) in [("C", e.first), ("c", e.nominal), ("d", e.deviation)] {
                if value < 0 {
                    return Err(at(format!("edges[{i}].{name}"), format!("negative cost {value}")));
                }
            }
        }
        if self.k > self.n - 1 {
            return Err(at("k", format!("k = {} exceeds n - 1 = {}", self.k, self.n - 1)));
        }
        if self.gamma < 0 {
            return Err(at("gamma", format!("negative budget {}", self.gamma)));
        }
        if self.model == ScenarioModel::DiscreteBudget && self.gamma as usize > self.edges.len() {
            return Err(at(
                "gamma",
                format!("budget {} exceeds the edge count {}", self.gamma, self.edges.len()),
            ));
        }
        Ok(())
    }

    pub fn graph(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|e| (e.u, e.v))).expect("validated instance")
    }

    pub fn first_costs(&self) -> Vec<Cost> {
        self.edges.iter().map(|e| e.first).collect()
    }

    pub fn nominal_costs(&self) -> Vec<Cost> {
        self.edges.iter().map(|e| e.nominal).collect()
    }

    pub fn to_instance(&self) -> IntervalInstance {
        IntervalInstance::new(
            self.graph(),
            self.first_costs(),
            self.nominal_costs(),
            self.edges.iter().map(|e| e.deviation).collect(),
            self.k,
            self.model,
            self.gamma,
        )
        .expect("validated instance")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    /// SHA-256 of the compact serialization, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("instance serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// An exact rational as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Exact {
    fn from(q: &Rational) -> Self {
        Exact {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl Exact {
    pub fn to_rational(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        (den != BigInt::from(0)).then(|| Rational::new(num, den))
    }
}

fn exact(q: &Option<Rational>) -> Option<Exact> {
    q.as_ref().map(Exact::from)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Objective {
    Integer(Cost),
    Exact(Exact),
    Bounds { lower: Exact, upper: Exact },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    /// Dual solution of the recoverable tree solver.
    Dual {
        theta: Cost,
        intersection: usize,
        target: usize,
        dual_bound: Cost,
    },
    /// Lagrange multiplier of the incremental solver.
    Lagrangian { multiplier: Cost, intersection: usize },
    /// Ratio bounds for the budgeted models.
    Ratio {
        model: ScenarioModel,
        alpha_global: Option<Exact>,
        alpha_recovery: Option<Exact>,
        alpha_source: Option<AlphaSource>,
        ratio_alpha: Option<Exact>,
        beta: Option<Exact>,
        ratio_beta: Option<Exact>,
        gamma: Option<Exact>,
        ratio_gamma: Option<Exact>,
        certified_ratio: Option<Exact>,
        scenario_objective: Exact,
        worst_case_upper: Cost,
    },
}

impl Certificate {
    pub fn ratio(model: ScenarioModel, cert: &crate::robust::ApproxCertificate) -> Self {
        Certificate::Ratio {
            model,
            alpha_global: exact(&cert.alpha_global),
            alpha_recovery: exact(&cert.alpha_recovery),
            alpha_source: cert.alpha.as_ref().map(|(_, s)| *s),
            ratio_alpha: exact(&cert.ratio_alpha),
            beta: exact(&cert.beta),
            ratio_beta: exact(&cert.ratio_beta),
            gamma: exact(&cert.gamma),
            ratio_gamma: exact(&cert.ratio_gamma),
            certified_ratio: exact(&cert.certified_ratio),
            scenario_objective: Exact::from(&cert.scenario_objective),
            worst_case_upper: cert.worst_case_upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_ns: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub solver: String,
    pub instance_digest: String,
    pub first_stage: Vec<EdgeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovery: Option<Vec<EdgeId>>,
    pub objective: Objective,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEvent>>,
}

impl ResultFile {
    pub fn new(solver: &str, instance: &InstanceFile, first_stage: &Tree, objective: Objective) -> Self {
        ResultFile {
            solver: solver.to_string(),
            instance_digest: instance.digest(),
            first_stage: first_stage.edges().to_vec(),
            recovery: None,
            objective,
            certificate: None,
            timing: None,
            trace: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }
}
