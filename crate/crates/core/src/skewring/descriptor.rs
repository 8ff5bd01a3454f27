use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalars::DomainDescriptor;

/// Either one value for every variable or one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerVar {
    All(String),
    Each(Vec<String>),
}

impl PerVar {
    pub fn expand(&self, n: usize) -> Option<Vec<String>> {
        match self {
            PerVar::All(s) => Some(vec![s.clone(); n]),
            PerVar::Each(v) if v.len() == n => Some(v.clone()),
            PerVar::Each(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Named(String),
    Detailed {
        kind: String,
        /// Variable names, most significant first.
        priority: Vec<String>,
    },
}

fn default_identity() -> PerVar {
    PerVar::All("identity".into())
}

fn default_zero() -> PerVar {
    PerVar::All("zero".into())
}

fn default_order() -> OrderSpec {
    OrderSpec::Named("lex".into())
}

/// JSON form of a ring:
/// `{"domain":…, "vars":["x1","x2"], "sigma":"frobenius^1", "delta":"zero",
///   "commutators":{"x,t":"1"}, "order":"lex"}`.
///
/// A commutator entry `"xi,xj": d` with `xi` before `xj` in `vars` encodes
/// `xj*xi = xi*xj + d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub domain: DomainDescriptor,
    pub vars: Vec<String>,
    #[serde(default = "default_identity")]
    pub sigma: PerVar,
    #[serde(default = "default_zero")]
    pub delta: PerVar,
    #[serde(default)]
    pub commutators: BTreeMap<String, String>,
    #[serde(default = "default_order")]
    pub order: OrderSpec,
}
