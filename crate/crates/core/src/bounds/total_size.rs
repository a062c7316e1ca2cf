use serde::{Deserialize, Serialize};

use crate::error::{SearchBudget, SolveError};
use crate::exact::{nu_w, Matching};
use crate::family::DIntervalFamily;
use crate::ground::covered_point_count;
use crate::lp::{is_balanced, GroundSet};
use crate::rational::{self, from_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalSizeMatching {
    /// `nu_l`, with `l(e) = |e|`.
    pub value: u64,
    pub matching: Matching,
    pub balanced: bool,
    /// Points covered by some edge.
    pub ground_size: u64,
    /// `k / (2d)`, only for balanced families.
    #[serde(with = "rational::pq_opt")]
    pub bound: Option<Rational>,
}

impl TotalSizeMatching {
    pub fn holds(&self) -> Option<bool> {
        self.bound.as_ref().map(|b| from_int(self.value) >= *b)
    }
}

/// Maximum total size of a matching; for balanced families it is checked
/// against `k / (2d)`.
pub fn total_size_matching(h: &DIntervalFamily, budget: &SearchBudget) -> Result<TotalSizeMatching, SolveError> {
    let sizes = h.size_weights();
    let (value, matching) = nu_w(h, &sizes, budget)?;
    let balanced = !h.is_empty() && is_balanced(h, GroundSet::Covered)?.is_balanced();
    let ground_size = covered_point_count(h);
    let bound = balanced.then(|| Rational::new(ground_size.into(), (2 * h.d as u64).into()));
    Ok(TotalSizeMatching { value, matching, balanced, ground_size, bound })
}
