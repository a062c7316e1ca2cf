use serde::{Deserialize, Serialize};

use crate::error::{SearchBudget, SolveError};
use crate::exact::alpha_w;
use crate::graph::{Digraph, Graph};
use crate::rational::{self, from_int, Rational};

/// Outcome of a weighted Turán check `lhs >= W^2/K - W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranCheck {
    pub lhs: u64,
    #[serde(with = "rational::pq")]
    pub rhs: Rational,
    pub holds: bool,
    /// `W = w[V]`.
    pub total_weight: u64,
    /// `K = alpha_w`.
    pub independence: u64,
}

fn turan_rhs(total: u64, k: u64) -> Rational {
    assert!(k > 0, "alpha_w is positive for positive weights");
    Rational::new((total as i128 * total as i128).into(), (k as i128).into()) - from_int(total)
}

fn check(g: &Graph, w: &[u64], lhs: u64, budget: &SearchBudget) -> Result<TuranCheck, SolveError> {
    let total: u64 = w.iter().sum();
    if g.is_empty() {
        return Ok(TuranCheck { lhs, rhs: from_int(0), holds: true, total_weight: 0, independence: 0 });
    }
    let k = alpha_w(g, w, budget)?.weight;
    let rhs = turan_rhs(total, k);
    Ok(TuranCheck { holds: from_int(lhs) >= rhs, lhs, rhs, total_weight: total, independence: k })
}

/// `sum_{uv in E} (w(u) + w(v)) >= W^2/K - W` for a vertex-weighted graph.
pub fn weighted_turan_bound(g: &Graph, w: &[u64], budget: &SearchBudget) -> Result<TuranCheck, SolveError> {
    let lhs = g.edges().iter().map(|&(u, v)| w[u] + w[v]).sum();
    check(g, w, lhs, budget)
}

/// `sum_{xy in arcs} w(x) >= W^2/K - W` for a digraph in which every
/// adjacent pair is joined by at least two arcs.
pub fn directed_turan_bound(d: &Digraph, w: &[u64], budget: &SearchBudget) -> Result<TuranCheck, SolveError> {
    if w.len() != d.vertices {
        return Err(SolveError::Precondition(format!("{} weights for {} vertices", w.len(), d.vertices)));
    }
    if let Some(&(u, _)) = d.arcs.iter().find(|(u, v)| u == v || *u >= d.vertices || *v >= d.vertices) {
        return Err(SolveError::Precondition(format!("bad arc at vertex {u}")));
    }
    let thin = d.thin_pairs();
    if let Some(&(u, v)) = thin.first() {
        return Err(SolveError::Precondition(format!(
            "adjacent pair ({u}, {v}) is joined by fewer than two arcs"
        )));
    }
    let lhs = d.arcs.iter().map(|&(x, _)| w[x]).sum();
    check(&d.underlying(), w, lhs, budget)
}
