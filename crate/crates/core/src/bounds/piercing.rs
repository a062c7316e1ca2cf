use serde::{Deserialize, Serialize};

use crate::error::{SearchBudget, SolveError};
use crate::exact::nu_w;
use crate::family::{DIntervalFamily, Point, WeightSystem};
use crate::graph::Digraph;
use crate::rational::{self, from_int, Rational};

/// Arc from a piercing edge to a pierced one: `endpoint` is an endpoint of
/// component `piercer_component` of `from` and lies in component
/// `pierced_component` of `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingArc {
    pub from: usize,
    pub to: usize,
    pub endpoint: Point,
    pub piercer_component: usize,
    pub pierced_component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingDigraph {
    pub vertices: usize,
    pub arcs: Vec<PiercingArc>,
}

impl PiercingDigraph {
    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(self.vertices, self.arcs.iter().map(|a| (a.from, a.to)).collect())
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.to_digraph().out_degrees()
    }
}

/// Two arcs per intersecting pair of edges.
///
/// For a pair `e1 < e2` the first meeting component pair `(c1, c2)` is used.
/// Candidates are `(x, c_i)` with `x` an endpoint slot (left or right) of the
/// other component lying in `c_i`; the two least by `(x, i, slot)` become
/// arcs from the edge owning `x` to the edge owning `c_i`.
pub fn build_piercing_digraph(h: &DIntervalFamily) -> PiercingDigraph {
    let mut arcs = Vec::new();
    for a in 0..h.len() {
        for b in a + 1..h.len() {
            let ea = &h.edges[a];
            let eb = &h.edges[b];
            let meeting = ea.components.iter().enumerate().find_map(|(i, ca)| {
                eb.components.iter().position(|cb| ca.meets(cb)).map(|j| (i, j))
            });
            let Some((i, j)) = meeting else { continue };
            let (ca, cb) = (ea.components[i], eb.components[j]);
            // (endpoint, pierced side: 0 = a's component, 1 = b's, slot)
            let mut cands = Vec::new();
            for (slot, x) in [ca.lo, ca.hi].into_iter().enumerate() {
                let p = Point::new(ca.line, x);
                if cb.contains(p) {
                    cands.push((p, 1, slot));
                }
            }
            for (slot, x) in [cb.lo, cb.hi].into_iter().enumerate() {
                let p = Point::new(cb.line, x);
                if ca.contains(p) {
                    cands.push((p, 0, slot));
                }
            }
            cands.sort();
            debug_assert!(cands.len() >= 2, "meeting intervals expose two endpoint slots");
            for &(p, side, _) in cands.iter().take(2) {
                let arc = if side == 1 {
                    PiercingArc { from: a, to: b, endpoint: p, piercer_component: i, pierced_component: j }
                } else {
                    PiercingArc { from: b, to: a, endpoint: p, piercer_component: j, pierced_component: i }
                };
                arcs.push(arc);
            }
        }
    }
    PiercingDigraph { vertices: h.len(), arcs }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeavyPoint {
    pub point: Point,
    /// Edges containing `point`, the edge it comes from included.
    pub pierced_edge_count: u64,
    /// `W / (2 d K)`.
    #[serde(with = "rational::pq")]
    pub bound: Rational,
    pub total_weight: u64,
    pub matching_weight: u64,
}

impl HeavyPoint {
    pub fn meets_bound(&self) -> bool {
        from_int(self.pierced_edge_count) >= self.bound
    }
}

/// A component endpoint lying in the most edges; some endpoint always meets
/// at least `W / (2 d nu_w)` of them. Ties go to the least point.
pub fn find_heavy_point(
    h: &DIntervalFamily,
    w: &WeightSystem,
    budget: &SearchBudget,
) -> Result<HeavyPoint, SolveError> {
    if h.is_empty() {
        return Err(SolveError::EmptyFamily("find_heavy_point"));
    }
    let (k, _) = nu_w(h, w, budget)?;
    let total = w.total();
    let mut best: Option<(Point, u64)> = None;
    for e in &h.edges {
        for (_, p) in e.endpoints() {
            let count = h.degree(p) as u64;
            let better = match best {
                None => true,
                Some((bp, bc)) => count > bc || (count == bc && p < bp),
            };
            if better {
                best = Some((p, count));
            }
        }
    }
    let (point, count) = best.expect("non-empty family has endpoints");
    Ok(HeavyPoint {
        point,
        pierced_edge_count: count,
        bound: Rational::new(total.into(), (2 * h.d as u64 * k).into()),
        total_weight: total,
        matching_weight: k,
    })
}
