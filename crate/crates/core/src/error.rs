use thiserror::Error;

use crate::family::Violation;

/// Node and enumeration caps for the exhaustive solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Search-tree nodes one solver call may expand.
    pub max_nodes: u64,
    /// Maximal matchings the fractional edge-coloring LP may enumerate.
    pub max_matchings: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 10_000_000, max_matchings: 20_000 }
    }
}

impl SearchBudget {
    pub fn with_max_nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Default::default() }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("{solver}: search budget of {limit} exceeded")]
    BudgetExceeded { solver: &'static str, limit: u64 },
    #[error("invalid instance: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("{0} requires a non-empty family")]
    EmptyFamily(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("linear program failed: {0}")]
    Lp(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl SolveError {
    pub fn is_budget(&self) -> bool {
        matches!(self, SolveError::BudgetExceeded { .. })
    }
}

/// Counts expanded nodes against a limit.
#[derive(Debug)]
pub(crate) struct NodeCounter {
    solver: &'static str,
    used: u64,
    limit: u64,
}

impl NodeCounter {
    pub(crate) fn new(solver: &'static str, limit: u64) -> Self {
        NodeCounter { solver, used: 0, limit }
    }

    pub(crate) fn tick(&mut self) -> Result<(), SolveError> {
        self.used += 1;
        if self.used > self.limit {
            Err(SolveError::BudgetExceeded { solver: self.solver, limit: self.limit })
        } else {
            Ok(())
        }
    }
}
