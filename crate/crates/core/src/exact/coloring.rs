use serde::{Deserialize, Serialize};

use super::check_family;
use crate::error::{NodeCounter, SearchBudget, SolveError};
use crate::family::DIntervalFamily;
use crate::graph::Graph;

/// A partition of the edges into matchings (`assignment[e]` is the color of
/// edge `e`; colors are numbered by first appearance).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub colors: usize,
    pub assignment: Vec<usize>,
}

impl EdgeColoring {
    pub fn is_proper_for(&self, h: &DIntervalFamily) -> bool {
        self.assignment.len() == h.len()
            && self.assignment.iter().all(|&c| c < self.colors)
            && (0..h.len()).all(|a| {
                (a + 1..h.len()).all(|b| self.assignment[a] != self.assignment[b] || !h.intersects(a, b))
            })
    }
}

fn canonical(assignment: &[usize]) -> (usize, Vec<usize>) {
    let mut relabel = Vec::<(usize, usize)>::new();
    let out = assignment
        .iter()
        .map(|&c| match relabel.iter().find(|(old, _)| *old == c) {
            Some(&(_, new)) => new,
            None => {
                let new = relabel.len();
                relabel.push((c, new));
                new
            }
        })
        .collect();
    (relabel.len(), out)
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 0;
    for start in 0..g.len() {
        let mut cands = g.neighbors(start).clone();
        let mut size = 1;
        while let Some(v) = cands.ones().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) {
            size += 1;
            cands.intersect_with(g.neighbors(v));
        }
        best = best.max(size);
    }
    best
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<Option<usize>>,
    counter: NodeCounter,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen = vec![false; self.k];
        for u in self.g.neighbors(v).ones() {
            if let Some(c) = self.color[u] {
                seen[c] = true;
            }
        }
        seen.iter().filter(|&&s| s).count()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.len())
            .filter(|&v| self.color[v].is_none())
            .max_by_key(|&v| (self.saturation(v), self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn solve(&mut self, used: usize) -> Result<bool, SolveError> {
        self.counter.tick()?;
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        for c in 0..self.k.min(used + 1) {
            if self.g.neighbors(v).ones().any(|u| self.color[u] == Some(c)) {
                continue;
            }
            self.color[v] = Some(c);
            if self.solve(used.max(c + 1))? {
                return Ok(true);
            }
        }
        self.color[v] = None;
        Ok(false)
    }
}

/// Exact chromatic number of `g` with a witnessing coloring.
pub fn chromatic_number(g: &Graph, budget: &SearchBudget) -> Result<(usize, Vec<usize>), SolveError> {
    if g.is_empty() {
        return Ok((0, Vec::new()));
    }
    let mut counter = NodeCounter::new("chi_e", budget.max_nodes);
    let lower = greedy_clique(g);
    for k in lower..=g.len() {
        let mut search = Dsatur { g, k, color: vec![None; g.len()], counter };
        let found = search.solve(0)?;
        counter = search.counter;
        if found {
            let raw: Vec<usize> = search.color.into_iter().map(|c| c.expect("all colored")).collect();
            return Ok(canonical(&raw));
        }
    }
    unreachable!("n colors always suffice")
}

/// `chi_e(H)`: fewest matchings covering all edges.
pub fn chi_e(h: &DIntervalFamily, budget: &SearchBudget) -> Result<EdgeColoring, SolveError> {
    check_family(h)?;
    let (colors, assignment) = chromatic_number(&Graph::intersection(h), budget)?;
    Ok(EdgeColoring { colors, assignment })
}
