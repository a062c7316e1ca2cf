use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::check_weighted;
use crate::error::{NodeCounter, SearchBudget, SolveError};
use crate::family::{covers_count, DIntervalFamily, Point, WeightSystem};
use crate::ground::{maximal_atoms, Atom};
use crate::rational::ceil_u64;

/// Integer point multiplicities `g` with `g[e] >= w(e)` for every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralCover {
    /// Positive values only.
    #[serde(with = "point_counts")]
    pub values: BTreeMap<Point, u64>,
}

mod point_counts {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        line: usize,
        pos: u64,
        value: u64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Point, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(p, &value)| Entry { line: p.line, pos: p.pos, value }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Point, u64>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?.into_iter().map(|e| (Point::new(e.line, e.pos), e.value)).collect())
    }
}

impl IntegralCover {
    pub fn size(&self) -> u64 {
        self.values.values().sum()
    }

    pub fn is_cover_of(&self, h: &DIntervalFamily, w: &WeightSystem) -> bool {
        h.edges
            .iter()
            .enumerate()
            .all(|(i, e)| covers_count(e, &self.values) >= w[i])
    }
}

struct Search<'a> {
    atoms: &'a [Atom],
    /// For each edge, ascending indices of the atoms it contains.
    edge_atoms: Vec<Vec<usize>>,
    /// Edges whose last atom is the given one.
    closing: Vec<Vec<usize>>,
    deficit: Vec<u64>,
    values: Vec<u64>,
    total: u64,
    best: Option<u64>,
    best_values: Vec<u64>,
    floor: u64,
    done: bool,
    counter: NodeCounter,
}

impl Search<'_> {
    /// Deficits of edges that share no remaining atom add up.
    fn lower_bound(&self, from: usize) -> u64 {
        let mut open: Vec<usize> = (0..self.deficit.len()).filter(|&e| self.deficit[e] > 0).collect();
        open.sort_by_key(|&e| (std::cmp::Reverse(self.deficit[e]), e));
        let mut used = FixedBitSet::with_capacity(self.atoms.len());
        let mut bound = 0;
        for e in open {
            let rest = &self.edge_atoms[e];
            if rest.iter().any(|&a| a >= from && used.contains(a)) {
                continue;
            }
            rest.iter().filter(|&&a| a >= from).for_each(|&a| used.insert(a));
            bound += self.deficit[e];
        }
        bound
    }

    fn expand(&mut self, i: usize) -> Result<(), SolveError> {
        if self.done {
            return Ok(());
        }
        self.counter.tick()?;
        if self.deficit.iter().all(|&x| x == 0) {
            if self.best.is_none_or(|b| self.total < b) {
                self.best = Some(self.total);
                self.best_values = self.values.clone();
                self.done = self.total <= self.floor;
            }
            return Ok(());
        }
        if i == self.atoms.len() {
            return Ok(());
        }
        if let Some(b) = self.best {
            if self.total + self.lower_bound(i) >= b {
                return Ok(());
            }
        }
        let cap = self.atoms[i].edges.iter().map(|&e| self.deficit[e]).max().unwrap_or(0);
        // largest value first: pushes mass left, so the first optimum found
        // is the lexicographically least sorted point multiset
        for v in (0..=cap).rev() {
            let saved: Vec<u64> = self.atoms[i].edges.iter().map(|&e| self.deficit[e]).collect();
            for &e in &self.atoms[i].edges {
                self.deficit[e] = self.deficit[e].saturating_sub(v);
            }
            let feasible = self.closing[i].iter().all(|&e| self.deficit[e] == 0);
            if feasible {
                self.values[i] = v;
                self.total += v;
                let r = self.expand(i + 1);
                self.total -= v;
                self.values[i] = 0;
                r?;
            }
            for (&e, s) in self.atoms[i].edges.iter().zip(saved) {
                self.deficit[e] = s;
            }
            if !feasible || self.done {
                break;
            }
        }
        Ok(())
    }
}

/// `tau_w(H)`: minimum total multiplicity of a `w`-cover.
///
/// Candidate points are the leftmost points of the maximal atoms; a point
/// never needs a value above the largest deficit of the edges through it.
/// The LP optimum is used as a global floor to stop early.
pub fn tau_w(
    h: &DIntervalFamily,
    w: &WeightSystem,
    budget: &SearchBudget,
) -> Result<(u64, IntegralCover), SolveError> {
    check_weighted(h, w)?;
    if h.is_empty() {
        return Ok((0, IntegralCover { values: BTreeMap::new() }));
    }
    let atoms = maximal_atoms(h);
    let mut edge_atoms = vec![Vec::new(); h.len()];
    for (a, atom) in atoms.iter().enumerate() {
        for &e in &atom.edges {
            edge_atoms[e].push(a);
        }
    }
    let mut closing = vec![Vec::new(); atoms.len()];
    for (e, list) in edge_atoms.iter().enumerate() {
        closing[*list.last().expect("every edge meets a maximal atom")].push(e);
    }
    let floor = crate::lp::tau_star_w(h, w)
        .ok()
        .and_then(|s| ceil_u64(&s.value))
        .unwrap_or(0);
    let mut search = Search {
        atoms: &atoms,
        edge_atoms,
        closing,
        deficit: w.0.clone(),
        values: vec![0; atoms.len()],
        total: 0,
        best: None,
        best_values: Vec::new(),
        floor,
        done: false,
        counter: NodeCounter::new("tau_w", budget.max_nodes),
    };
    search.expand(0)?;
    let best = search.best.expect("a cover always exists");
    let values = atoms
        .iter()
        .zip(&search.best_values)
        .filter(|(_, &v)| v > 0)
        .map(|(a, &v)| (a.representative(), v))
        .collect();
    Ok((best, IntegralCover { values }))
}

/// Transversal number `tau(H)`.
pub fn tau(h: &DIntervalFamily, budget: &SearchBudget) -> Result<(u64, IntegralCover), SolveError> {
    tau_w(h, &WeightSystem::unit(h.len()), budget)
}
