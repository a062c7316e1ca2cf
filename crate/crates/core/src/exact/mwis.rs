use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::check_weighted;
use crate::error::{NodeCounter, SearchBudget, SolveError};
use crate::family::{DIntervalFamily, WeightSystem};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub weight: u64,
    /// Ascending vertex indices.
    pub vertices: Vec<usize>,
}

/// Pairwise disjoint edges of a family, by ascending index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edge_indices: Vec<usize>,
}

impl Matching {
    pub fn weight(&self, w: &WeightSystem) -> u64 {
        self.edge_indices.iter().map(|&e| w[e]).sum()
    }

    pub fn is_matching_of(&self, h: &DIntervalFamily) -> bool {
        self.edge_indices.iter().enumerate().all(|(i, &a)| {
            self.edge_indices[i + 1..].iter().all(|&b| a != b && !h.intersects(a, b))
        })
    }
}

struct Search<'a> {
    g: &'a Graph,
    w: &'a [u64],
    by_weight: Vec<usize>,
    counter: NodeCounter,
    best: Option<u64>,
    best_set: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    /// Greedy clique partition of `cands`: each clique contributes its
    /// heaviest vertex.
    fn clique_cover_bound(&self, cands: &FixedBitSet) -> u64 {
        let mut rest = cands.clone();
        let mut bound = 0;
        for &v in &self.by_weight {
            if !rest.contains(v) {
                continue;
            }
            rest.set(v, false);
            bound += self.w[v];
            let mut common = self.g.neighbors(v).clone();
            common.intersect_with(&rest);
            for &u in &self.by_weight {
                if common.contains(u) {
                    rest.set(u, false);
                    common.intersect_with(self.g.neighbors(u));
                }
            }
        }
        bound
    }

    fn expand(&mut self, cands: FixedBitSet, weight: u64) -> Result<(), SolveError> {
        self.counter.tick()?;
        let Some(v) = cands.ones().next() else {
            if self.best.is_none_or(|b| weight > b) {
                self.best = Some(weight);
                self.best_set = self.current.clone();
            }
            return Ok(());
        };
        if let Some(b) = self.best {
            if weight + self.clique_cover_bound(&cands) <= b {
                return Ok(());
            }
        }
        // include first: visits sets in lexicographic order of sorted indices
        let mut with = cands.clone();
        with.set(v, false);
        with.difference_with(self.g.neighbors(v));
        self.current.push(v);
        self.expand(with, weight + self.w[v])?;
        self.current.pop();

        let mut without = cands;
        without.set(v, false);
        self.expand(without, weight)
    }
}

/// Maximum-weight independent set by branch and bound. Weights must be
/// positive; the lexicographically least optimal set is returned.
pub fn max_weight_independent_set(
    g: &Graph,
    w: &[u64],
    budget: &SearchBudget,
) -> Result<IndependentSet, SolveError> {
    if w.len() != g.len() {
        return Err(SolveError::Precondition(format!(
            "{} weights for {} vertices",
            w.len(),
            g.len()
        )));
    }
    if w.contains(&0) {
        return Err(SolveError::Precondition("vertex weights must be positive".into()));
    }
    let mut by_weight: Vec<usize> = (0..g.len()).collect();
    by_weight.sort_by_key(|&v| (std::cmp::Reverse(w[v]), v));
    let mut search = Search {
        g,
        w,
        by_weight,
        counter: NodeCounter::new("alpha_w", budget.max_nodes),
        best: None,
        best_set: Vec::new(),
        current: Vec::new(),
    };
    let mut all = FixedBitSet::with_capacity(g.len());
    all.insert_range(..);
    search.expand(all, 0)?;
    Ok(IndependentSet { weight: search.best.unwrap_or(0), vertices: search.best_set })
}

/// `alpha_w(G)`: maximum total weight of an independent set.
pub fn alpha_w(g: &Graph, w: &[u64], budget: &SearchBudget) -> Result<IndependentSet, SolveError> {
    max_weight_independent_set(g, w, budget)
}

/// `nu_w(H)`: maximum weight of a matching, solved as a maximum-weight
/// independent set of the intersection graph.
pub fn nu_w(
    h: &DIntervalFamily,
    w: &WeightSystem,
    budget: &SearchBudget,
) -> Result<(u64, Matching), SolveError> {
    check_weighted(h, w)?;
    let g = Graph::intersection(h);
    let set = max_weight_independent_set(&g, &w.0, budget).map_err(|e| rename(e, "nu_w"))?;
    Ok((set.weight, Matching { edge_indices: set.vertices }))
}

/// Matching number `nu(H)`.
pub fn nu(h: &DIntervalFamily, budget: &SearchBudget) -> Result<(u64, Matching), SolveError> {
    nu_w(h, &WeightSystem::unit(h.len()), budget)
}

fn rename(e: SolveError, solver: &'static str) -> SolveError {
    match e {
        SolveError::BudgetExceeded { limit, .. } => SolveError::BudgetExceeded { solver, limit },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::DInterval;

    fn subsets_oracle(g: &Graph, w: &[u64]) -> u64 {
        (0u32..1 << g.len())
            .filter_map(|mask| {
                let set: Vec<usize> = (0..g.len()).filter(|&i| mask >> i & 1 == 1).collect();
                g.is_independent(&set).then(|| set.iter().map(|&i| w[i]).sum())
            })
            .max()
            .unwrap()
    }

    #[test]
    fn path3_prefers_lex_least() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let w = [1, 2, 1];
        assert_eq!(subsets_oracle(&g, &w), 2);
        let s = alpha_w(&g, &w, &SearchBudget::default()).unwrap();
        assert_eq!(s.weight, 2);
        assert_eq!(s.vertices, vec![0, 2]);
    }

    #[test]
    fn edgeless_and_complete() {
        let w = [3, 1, 4, 1, 5];
        let b = SearchBudget::default();
        assert_eq!(alpha_w(&Graph::empty(5), &w, &b).unwrap().weight, 14);
        let s = alpha_w(&Graph::complete(5), &w, &b).unwrap();
        assert_eq!((s.weight, s.vertices), (5, vec![4]));
    }

    #[test]
    fn disjoint_edges_matched_together() {
        let h = DIntervalFamily::on_line(1, 5, vec![DInterval::interval(1, 2), DInterval::interval(4, 5)]);
        let (v, m) = nu_w(&h, &WeightSystem(vec![3, 5]), &SearchBudget::default()).unwrap();
        assert_eq!(v, 8);
        assert_eq!(m.edge_indices, vec![0, 1]);
    }

    #[test]
    fn triangle_nu_is_one() {
        let h = DIntervalFamily::on_line(
            2,
            3,
            vec![
                DInterval::on_line(&[(1, 1), (2, 2)]),
                DInterval::on_line(&[(2, 2), (3, 3)]),
                DInterval::on_line(&[(1, 1), (3, 3)]),
            ],
        );
        let (v, m) = nu(&h, &SearchBudget::default()).unwrap();
        assert_eq!(v, 1);
        assert_eq!(m.edge_indices, vec![0]);
        assert!(m.is_matching_of(&h));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::empty(20);
        let err = alpha_w(&g, &[1; 20], &SearchBudget::with_max_nodes(5)).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn zero_weight_rejected() {
        let err = alpha_w(&Graph::empty(2), &[1, 0], &SearchBudget::default()).unwrap_err();
        assert!(matches!(err, SolveError::Precondition(_)));
    }
}
