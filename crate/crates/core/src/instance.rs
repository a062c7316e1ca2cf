//! The instance JSON document shared by the CLI, the FFI layer and the
//! witness store:
//!
//! ```json
//! { "d": 2, "separated": false, "line_lengths": [3],
//!   "edges": [[{"line": 0, "lo": 1, "hi": 1}, {"line": 0, "lo": 2, "hi": 2}]],
//!   "weights": [1] }
//! ```
//!
//! `weights` is optional and defaults to the unit weight system.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{DIntervalFamily, Violation, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    #[serde(flatten)]
    pub family: DIntervalFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightSystem>,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Instance {
    pub fn new(family: DIntervalFamily, weights: Option<WeightSystem>) -> Self {
        Instance { family, weights }
    }

    pub fn unweighted(family: DIntervalFamily) -> Self {
        Instance { family, weights: None }
    }

    /// The explicit weights, or `w = 1` everywhere.
    pub fn weights_or_unit(&self) -> WeightSystem {
        self.weights
            .clone()
            .unwrap_or_else(|| WeightSystem::unit(self.family.len()))
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut v = self.family.validate();
        if let Some(w) = &self.weights {
            v.extend(self.family.validate_weights(w));
        }
        v
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let inst: Instance = serde_json::from_str(text)?;
        let violations = inst.violations();
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(InstanceError::Invalid(violations))
        }
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Compact canonical serialization (field order is fixed).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization is infallible")
    }
}
