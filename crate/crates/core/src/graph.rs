//! Small dense graphs used by the integral solvers and the Turán checks.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::family::DIntervalFamily;

/// Simple undirected graph with bitset adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Builds from an edge list; loops are ignored and duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// L(H): vertices are edges of `h`, adjacent iff they intersect.
    pub fn intersection(h: &DIntervalFamily) -> Self {
        let mut g = Graph::empty(h.len());
        for a in 0..h.len() {
            for b in a + 1..h.len() {
                if h.intersects(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }
}

/// Directed multigraph given as an arc list (parallel arcs allowed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    pub vertices: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: usize, arcs: Vec<(usize, usize)>) -> Self {
        Digraph { vertices, arcs }
    }

    /// Replaces every edge of `g` by two opposite arcs.
    pub fn doubled(g: &Graph) -> Self {
        let arcs = g.edges().into_iter().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        Digraph { vertices: g.len(), arcs }
    }

    pub fn underlying(&self) -> Graph {
        Graph::from_edges(self.vertices, &self.arcs)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut out = vec![0; self.vertices];
        for &(u, _) in &self.arcs {
            out[u] += 1;
        }
        out
    }

    /// Adjacent pairs `(u, v)`, `u < v`, joined by fewer than two arcs.
    pub fn thin_pairs(&self) -> Vec<(usize, usize)> {
        let mut count = std::collections::BTreeMap::new();
        for &(u, v) in &self.arcs {
            if u != v {
                *count.entry((u.min(v), u.max(v))).or_insert(0usize) += 1;
            }
        }
        count.into_iter().filter(|&(_, c)| c < 2).map(|(p, _)| p).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_graph_ops() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 1), (1, 1)]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.degree(1), 2);
        assert!(g.is_independent(&[0, 2]));
        assert!(!g.is_independent(&[0, 1]));
        assert_eq!(Graph::complete(4).edge_count(), 6);
    }

    #[test]
    fn doubled_digraph_has_no_thin_pairs() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let d = Digraph::doubled(&g);
        assert_eq!(d.arcs.len(), 4);
        assert!(d.thin_pairs().is_empty());
        assert_eq!(d.underlying(), g);
        let thin = Digraph::new(2, vec![(0, 1)]);
        assert_eq!(thin.thin_pairs(), vec![(0, 1)]);
    }
}
