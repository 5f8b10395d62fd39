use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::hamming::Vertex;
use crate::perm::Permutation;
use crate::wreath::WreathElement;

/// Outcome of a certifier.
///
/// A `false` verdict always carries a counterexample; a `true` verdict carries
/// the witnesses needed to re-check it. Maps are ordered, so the JSON form is
/// deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub property: String,
    pub verdict: bool,
    pub witnesses: BTreeMap<String, Value>,
    pub counterexample: Option<Value>,
    pub stats: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(property: &str) -> Self {
        Report {
            property: property.to_string(),
            verdict: true,
            witnesses: BTreeMap::new(),
            counterexample: None,
            stats: BTreeMap::new(),
        }
    }

    pub fn witness(mut self, key: &str, value: impl Serialize) -> Self {
        self.witnesses.insert(key.to_string(), to_value(value));
        self
    }

    pub fn stat(mut self, key: &str, value: impl Serialize) -> Self {
        self.stats.insert(key.to_string(), to_value(value));
        self
    }

    /// Sets the verdict to false with the given counterexample.
    pub fn fail(mut self, counterexample: Value) -> Self {
        self.verdict = false;
        self.counterexample = Some(counterexample);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::parse(e.line(), e.to_string()))
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.property, self.verdict)?;
        for (k, v) in &self.witnesses {
            writeln!(f, "  {k}: {v}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample: {c}")?;
        }
        for (k, v) in &self.stats {
            writeln!(f, "  {k}: {v}")?;
        }
        Ok(())
    }
}

/// A vertex as its list of symbols.
pub fn vertex_json(v: &Vertex) -> Value {
    json!(v.to_vec())
}

pub fn perm_json(p: &Permutation) -> Value {
    json!(p.images())
}

pub fn element_json(x: &WreathElement) -> Value {
    serde_json::to_value(x).expect("serializable")
}
