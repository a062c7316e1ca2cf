//! Exact integral invariants by exhaustive branch-and-bound search.
//!
//! Every solver is single-threaded and deterministic; among optimal
//! witnesses the lexicographically least one is returned.

mod coloring;
mod cover;
mod mwis;

pub use coloring::{chi_e, chromatic_number, EdgeColoring};
pub use cover::{tau, tau_w, IntegralCover};
pub use mwis::{alpha_w, max_weight_independent_set, nu, nu_w, IndependentSet, Matching};

use crate::error::SolveError;
use crate::family::{DIntervalFamily, WeightSystem};

pub(crate) fn check_family(h: &DIntervalFamily) -> Result<(), SolveError> {
    let v = h.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(SolveError::Invalid(v))
    }
}

pub(crate) fn check_weighted(h: &DIntervalFamily, w: &WeightSystem) -> Result<(), SolveError> {
    let mut v = h.validate();
    v.extend(h.validate_weights(w));
    if v.is_empty() {
        Ok(())
    } else {
        Err(SolveError::Invalid(v))
    }
}
