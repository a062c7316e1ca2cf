use serde::{Deserialize, Serialize};

use super::piercing::build_piercing_digraph;
use crate::family::DIntervalFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyColoring {
    pub colors_used: usize,
    pub assignment: Vec<usize>,
    /// Δ, the largest number of edges through one point.
    pub max_degree: usize,
    /// `2d(Δ - 1)`, reported only when `Δ >= 2`.
    pub bound: Option<u64>,
}

impl GreedyColoring {
    pub fn within_bound(&self) -> Option<bool> {
        self.bound.map(|b| self.colors_used as u64 <= b)
    }
}

/// Smallest-last greedy coloring of the piercing digraph's underlying graph:
/// repeatedly delete a vertex of minimum degree, then color in reverse
/// deletion order with the least free color. Ties go to the lower index.
pub fn greedy_edge_coloring(h: &DIntervalFamily) -> GreedyColoring {
    let g = build_piercing_digraph(h).to_digraph().underlying();
    let n = g.len();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v).ones() {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    let mut color: Vec<Option<usize>> = vec![None; n];
    for &v in order.iter().rev() {
        let used: Vec<usize> = g.neighbors(v).ones().filter_map(|u| color[u]).collect();
        color[v] = (0..).find(|c| !used.contains(c));
    }
    let assignment: Vec<usize> = color.into_iter().map(|c| c.expect("colored")).collect();
    let colors_used = assignment.iter().max().map_or(0, |&c| c + 1);
    let max_degree = h.max_degree();
    let bound = (max_degree >= 2).then(|| 2 * h.d as u64 * (max_degree as u64 - 1));
    GreedyColoring { colors_used, assignment, max_degree, bound }
}
