//! Ground-set compression.
//!
//! Only the set of edges containing a point matters to covers and matchings,
//! so each line is cut into maximal runs ("atoms") of points that lie in
//! exactly the same edges. Solvers work on atoms and report results on each
//! atom's leftmost point.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;

use crate::family::{DIntervalFamily, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub line: usize,
    pub lo: u64,
    pub hi: u64,
    /// Indices of edges containing the atom, ascending.
    pub edges: Vec<usize>,
}

impl Atom {
    pub fn representative(&self) -> Point {
        Point::new(self.line, self.lo)
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// All atoms covered by at least one edge, in point order.
pub fn covered_atoms(h: &DIntervalFamily) -> Vec<Atom> {
    let mut out = Vec::new();
    for line in 0..h.num_lines() {
        // cut positions: a new atom may start at lo or at hi + 1
        let mut cuts = BTreeSet::new();
        for e in &h.edges {
            for c in e.components.iter().filter(|c| c.line == line) {
                cuts.insert(c.lo);
                cuts.insert(c.hi + 1);
            }
        }
        let cuts: Vec<u64> = cuts.into_iter().collect();
        for pair in cuts.windows(2) {
            let (lo, hi) = (pair[0], pair[1] - 1);
            let p = Point::new(line, lo);
            let edges: Vec<usize> = (0..h.len()).filter(|&i| h.edges[i].contains(p)).collect();
            if !edges.is_empty() {
                out.push(Atom { line, lo, hi, edges });
            }
        }
    }
    out
}

/// Atoms with distinct edge sets, keeping the leftmost of each class.
pub fn distinct_atoms(h: &DIntervalFamily) -> Vec<Atom> {
    let mut seen = HashSet::new();
    covered_atoms(h)
        .into_iter()
        .filter(|a| seen.insert(a.edges.clone()))
        .collect()
}

/// Distinct atoms whose edge set is not strictly contained in another's.
/// Covering problems never need the dominated ones.
pub fn maximal_atoms(h: &DIntervalFamily) -> Vec<Atom> {
    let atoms = distinct_atoms(h);
    let sets: Vec<FixedBitSet> = atoms
        .iter()
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(h.len());
            a.edges.iter().for_each(|&e| s.insert(e));
            s
        })
        .collect();
    atoms
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !sets
                .iter()
                .enumerate()
                .any(|(j, s)| j != i && sets[i].is_subset(s) && sets[i] != *s)
        })
        .map(|(_, a)| a.clone())
        .collect()
}

/// Number of points lying in at least one edge.
pub fn covered_point_count(h: &DIntervalFamily) -> u64 {
    covered_atoms(h).iter().map(Atom::len).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::DInterval;

    #[test]
    fn atoms_split_at_endpoints() {
        let h = DIntervalFamily::on_line(
            1,
            10,
            vec![DInterval::interval(1, 4), DInterval::interval(3, 6), DInterval::interval(9, 9)],
        );
        let atoms = covered_atoms(&h);
        let spans: Vec<_> = atoms.iter().map(|a| (a.lo, a.hi, a.edges.clone())).collect();
        assert_eq!(
            spans,
            vec![(1, 2, vec![0]), (3, 4, vec![0, 1]), (5, 6, vec![1]), (9, 9, vec![2])]
        );
        assert_eq!(covered_point_count(&h), 7);
        let max: Vec<_> = maximal_atoms(&h).iter().map(|a| a.lo).collect();
        assert_eq!(max, vec![3, 9]);
    }

    #[test]
    fn duplicate_classes_keep_leftmost() {
        let h = DIntervalFamily::on_line(2, 9, vec![DInterval::on_line(&[(1, 2), (5, 6)])]);
        let atoms = distinct_atoms(&h);
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].representative(), Point::new(0, 1));
    }

    #[test]
    fn every_point_class_matches_brute_force() {
        let h = DIntervalFamily::on_line(
            2,
            12,
            vec![
                DInterval::on_line(&[(1, 3), (7, 9)]),
                DInterval::on_line(&[(2, 5)]),
                DInterval::on_line(&[(5, 5), (9, 12)]),
            ],
        );
        let atoms = covered_atoms(&h);
        for p in h.ground_points() {
            let brute: Vec<usize> = (0..h.len()).filter(|&i| h.edges[i].contains(p)).collect();
            let atom = atoms.iter().find(|a| a.line == p.line && a.lo <= p.pos && p.pos <= a.hi);
            match atom {
                Some(a) => assert_eq!(a.edges, brute),
                None => assert!(brute.is_empty()),
            }
        }
    }
}
