//! JSON documents for instances and allocation results.
//!
//! Every number is a string holding an integer or a fraction `p/q`, so
//! values survive the trip exactly. Writing a parsed document yields its
//! canonical form: fractions reduced, optional fields omitted when absent.

use std::str::FromStr;

use fairxos::{Allocation, Instance, RandomizedAllocation, Rational, XosValuation};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses a non-negative integer or fraction.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let value = Rational::from_str(text.trim()).map_err(|_| format!("`{text}` is not a rational number"))?;
    if value.is_negative() {
        return Err(format!("`{text}` is negative"));
    }
    Ok(value)
}

/// Accepts bare JSON integers as well as strings on input.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Number {
    Text(String),
    Int(i64),
}

impl Number {
    fn parse(&self, path: &str) -> Result<Rational, FormatError> {
        let text = match self {
            Number::Text(t) => t.clone(),
            Number::Int(i) => i.to_string(),
        };
        parse_rational(&text).map_err(|m| invalid(path, m))
    }
}

#[derive(Debug, Deserialize)]
struct RawInstance {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    items: usize,
    agents: Vec<RawAgent<Number>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawAgent<N> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    functions: Vec<Vec<N>>,
}

#[derive(Serialize)]
struct CanonicalInstance<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: &'a Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: &'a Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    items: usize,
    agents: Vec<RawAgent<String>>,
}

/// An instance together with its optional metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub family: Option<String>,
    pub seed: Option<u64>,
    pub agent_names: Vec<Option<String>>,
    pub instance: Instance,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        Self {
            name: None,
            family: None,
            seed: None,
            agent_names: vec![None; instance.agents()],
            instance,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let raw: RawInstance = serde_json::from_str(text)?;
        if raw.agents.is_empty() {
            return Err(invalid("agents", "at least one agent is required"));
        }
        let mut valuations = Vec::with_capacity(raw.agents.len());
        for (i, agent) in raw.agents.iter().enumerate() {
            if agent.functions.is_empty() {
                return Err(invalid(format!("agents[{i}].functions"), "at least one function is required"));
            }
            let mut rows = Vec::with_capacity(agent.functions.len());
            for (k, row) in agent.functions.iter().enumerate() {
                let path = format!("agents[{i}].functions[{k}]");
                if row.len() != raw.items {
                    return Err(invalid(
                        path,
                        format!("has {} entries but there are {} items", row.len(), raw.items),
                    ));
                }
                let values = row
                    .iter()
                    .enumerate()
                    .map(|(j, x)| x.parse(&format!("{path}[{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(values);
            }
            let v = XosValuation::from_rows(rows).map_err(|e| invalid(format!("agents[{i}]"), e.to_string()))?;
            valuations.push(v);
        }
        let instance = Instance::new(raw.items, valuations).map_err(|e| invalid("agents", e.to_string()))?;
        Ok(Self {
            name: raw.name,
            family: raw.family,
            seed: raw.seed,
            agent_names: raw.agents.into_iter().map(|a| a.name).collect(),
            instance,
        })
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let agents = self
            .instance
            .valuations()
            .iter()
            .zip(&self.agent_names)
            .map(|(v, name)| RawAgent {
                name: name.clone(),
                functions: v
                    .functions()
                    .iter()
                    .map(|f| f.values().iter().map(|x| x.to_string()).collect())
                    .collect(),
            })
            .collect();
        let doc = CanonicalInstance {
            name: &self.name,
            family: &self.family,
            seed: self.seed,
            items: self.instance.items(),
            agents,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        text.push('\n');
        text
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Outcome {
    probability: String,
    owners: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawResult {
    Deterministic {
        agents: usize,
        owners: Vec<usize>,
    },
    Randomized {
        agents: usize,
        support: Vec<Outcome>,
    },
}

/// The output of an algorithm: one allocation or a lottery over several.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResultFile {
    Deterministic(Allocation),
    Randomized(RandomizedAllocation),
}

impl ResultFile {
    /// The result viewed as a lottery; deterministic results have one
    /// outcome.
    pub fn as_randomized(&self) -> RandomizedAllocation {
        match self {
            ResultFile::Deterministic(a) => RandomizedAllocation::certain(a.clone()),
            ResultFile::Randomized(r) => r.clone(),
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, ResultFile::Randomized(_))
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        match serde_json::from_str(text)? {
            RawResult::Deterministic { agents, owners } => Allocation::new(agents, owners)
                .map(ResultFile::Deterministic)
                .map_err(|e| invalid("owners", e.to_string())),
            RawResult::Randomized { agents, support } => {
                let mut outcomes = Vec::with_capacity(support.len());
                for (k, o) in support.into_iter().enumerate() {
                    let p = parse_rational(&o.probability)
                        .map_err(|m| invalid(format!("support[{k}].probability"), m))?;
                    let a = Allocation::new(agents, o.owners)
                        .map_err(|e| invalid(format!("support[{k}].owners"), e.to_string()))?;
                    outcomes.push((a, p));
                }
                RandomizedAllocation::new(outcomes)
                    .map(ResultFile::Randomized)
                    .map_err(|e| invalid("support", e.to_string()))
            }
        }
    }

    pub fn to_text(&self) -> String {
        let raw = match self {
            ResultFile::Deterministic(a) => RawResult::Deterministic {
                agents: a.agents(),
                owners: a.owners().to_vec(),
            },
            ResultFile::Randomized(r) => RawResult::Randomized {
                agents: r.agents(),
                support: r
                    .support()
                    .iter()
                    .map(|(a, p)| Outcome {
                        probability: p.to_string(),
                        owners: a.owners().to_vec(),
                    })
                    .collect(),
            },
        };
        let mut text = serde_json::to_string_pretty(&raw).expect("plain data serializes");
        text.push('\n');
        text
    }
}
