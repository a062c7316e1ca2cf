use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{compute_invariants, Invariant};
use crate::error::SearchBudget;
use crate::instance::Instance;
use crate::rational::{self, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `random` or `walecki`.
    pub source: String,
    pub seed: u64,
    pub iteration: u64,
}

/// A persisted instance with every invariant computed for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub schema_version: u32,
    pub target: String,
    pub instance: Instance,
    #[serde(with = "rational::pq_map")]
    pub invariants: BTreeMap<Invariant, Rational>,
    #[serde(with = "rational::pq_map")]
    pub ratios: BTreeMap<String, Rational>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl Witness {
    pub fn target_ratio(&self) -> Option<&Rational> {
        self.ratios.get(&self.target)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }

    pub fn from_json(s: &str) -> Result<Witness, serde_json::Error> {
        let w: Witness = serde_json::from_str(s)?;
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub invariant: Invariant,
    pub stored: String,
    pub recomputed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Replay {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes every stored invariant and compares exactly.
pub fn replay_witness(w: &Witness, budget: &SearchBudget) -> Replay {
    let which: Vec<Invariant> = w.invariants.keys().copied().collect();
    let weights = w.instance.weights_or_unit();
    let table = compute_invariants(&w.instance.family, &weights, &which, budget);
    let mut mismatches = Vec::new();
    for (&inv, stored) in &w.invariants {
        let recomputed = match (table.values.get(&inv), table.errors.get(&inv)) {
            (Some(v), _) if v == stored => continue,
            (Some(v), _) => rational::to_pq(v),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => "missing".to_string(),
        };
        mismatches.push(Mismatch { invariant: inv, stored: rational::to_pq(stored), recomputed });
    }
    Replay { checked: which.len(), mismatches }
}
