use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::simplex::{LinearProgram, LpOutcome, Relation};
use crate::error::{SearchBudget, SolveError};
use crate::exact::{check_family, check_weighted};
use crate::family::{DIntervalFamily, Point, WeightSystem};
use crate::graph::Graph;
use crate::ground::{covered_atoms, distinct_atoms, maximal_atoms};
use crate::rational::{self, from_int, Rational};

/// Non-negative edge values with load at most 1 on every point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalMatching {
    #[serde(with = "rational_vec")]
    pub values: Vec<Rational>,
}

/// Non-negative point values giving every edge at least its weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalCover {
    #[serde(with = "point_map")]
    pub values: BTreeMap<Point, Rational>,
}

impl FractionalMatching {
    pub fn objective(&self, w: &WeightSystem) -> Rational {
        self.values.iter().zip(&w.0).map(|(f, &x)| f * from_int(x)).sum()
    }

    /// Load `sum_{e ∋ p} f(e)`.
    pub fn load(&self, h: &DIntervalFamily, p: Point) -> Rational {
        h.edges
            .iter()
            .zip(&self.values)
            .filter(|(e, _)| e.contains(p))
            .map(|(_, f)| f.clone())
            .sum()
    }

    pub fn is_feasible_for(&self, h: &DIntervalFamily) -> bool {
        self.values.len() == h.len()
            && self.values.iter().all(|f| !f.is_negative())
            && covered_atoms(h).iter().all(|a| self.load(h, a.representative()) <= Rational::one())
    }
}

impl FractionalCover {
    pub fn objective(&self) -> Rational {
        self.values.values().cloned().sum()
    }

    pub fn mass_on(&self, e: &crate::family::DInterval) -> Rational {
        self.values
            .iter()
            .filter(|(p, _)| e.contains(**p))
            .map(|(_, v)| v.clone())
            .sum()
    }

    pub fn is_cover_of(&self, h: &DIntervalFamily, w: &WeightSystem) -> bool {
        self.values.values().all(|v| !v.is_negative())
            && h.edges.iter().enumerate().all(|(i, e)| self.mass_on(e) >= from_int(w[i]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalSolution {
    #[serde(with = "rational::pq")]
    pub value: Rational,
    pub cover: FractionalCover,
    pub matching: FractionalMatching,
}

/// `tau*_w(H) = nu*_w(H)` with both optimal certificates. Optimality is
/// certified by exact equality of the two objectives.
pub fn tau_star_w(h: &DIntervalFamily, w: &WeightSystem) -> Result<FractionalSolution, SolveError> {
    check_weighted(h, w)?;
    let atoms = maximal_atoms(h);
    let mut lp = LinearProgram::new(w.0.iter().map(|&x| from_int(x)).collect());
    for a in &atoms {
        let mut row = vec![Rational::zero(); h.len()];
        a.edges.iter().for_each(|&e| row[e] = Rational::one());
        lp.add(row, Relation::Le, Rational::one());
    }
    let sol = match lp.solve() {
        LpOutcome::Optimal(s) => s,
        other => return Err(SolveError::Lp(format!("packing LP not optimal: {other:?}"))),
    };
    let cover = FractionalCover {
        values: atoms
            .iter()
            .zip(&sol.dual)
            .filter(|(_, y)| y.is_positive())
            .map(|(a, y)| (a.representative(), y.clone()))
            .collect(),
    };
    let matching = FractionalMatching { values: sol.primal };
    let out = FractionalSolution { value: sol.value, cover, matching };
    if out.cover.objective() != out.value
        || out.matching.objective(w) != out.value
        || !out.cover.is_cover_of(h, w)
        || !out.matching.is_feasible_for(h)
    {
        return Err(SolveError::Lp("duality certificate check failed".into()));
    }
    Ok(out)
}

/// `tau*(H) = nu*(H)`.
pub fn tau_star(h: &DIntervalFamily) -> Result<FractionalSolution, SolveError> {
    tau_star_w(h, &WeightSystem::unit(h.len()))
}

/// Which points must be saturated by a perfect fractional matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundSet {
    /// Points lying in at least one edge.
    #[default]
    Covered,
    /// Every declared point of every line.
    Declared,
}

/// Point values `y` with `sum_{v in e} y(v) >= 0` for every edge and
/// `sum_v y(v) < 0`: no perfect fractional matching exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasWitness {
    #[serde(with = "point_map")]
    pub values: BTreeMap<Point, Rational>,
}

impl FarkasWitness {
    pub fn certifies(&self, h: &DIntervalFamily) -> bool {
        let total: Rational = self.values.values().cloned().sum();
        total.is_negative()
            && h.edges.iter().all(|e| {
                let s: Rational = self
                    .values
                    .iter()
                    .filter(|(p, _)| e.contains(**p))
                    .map(|(_, v)| v.clone())
                    .sum();
                !s.is_negative()
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Balance {
    Balanced { matching: FractionalMatching },
    Unbalanced { witness: FarkasWitness },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced { .. })
    }
}

/// Decides whether `h` has a perfect fractional matching on `ground`.
pub fn is_balanced(h: &DIntervalFamily, ground: GroundSet) -> Result<Balance, SolveError> {
    check_family(h)?;
    if ground == GroundSet::Declared {
        if let Some(p) = h.ground_points().find(|&p| h.degree(p) == 0) {
            let witness = FarkasWitness { values: [(p, -Rational::one())].into() };
            return Ok(Balance::Unbalanced { witness });
        }
    }
    let atoms = distinct_atoms(h);
    let mut lp = LinearProgram::new(vec![Rational::zero(); h.len()]);
    for a in &atoms {
        let mut row = vec![Rational::zero(); h.len()];
        a.edges.iter().for_each(|&e| row[e] = Rational::one());
        lp.add(row, Relation::Eq, Rational::one());
    }
    match lp.solve() {
        LpOutcome::Optimal(s) => {
            let matching = FractionalMatching { values: s.primal };
            let exact = covered_atoms(h)
                .iter()
                .all(|a| matching.load(h, a.representative()) == Rational::one());
            if !exact {
                return Err(SolveError::Lp("perfect matching certificate check failed".into()));
            }
            Ok(Balance::Balanced { matching })
        }
        LpOutcome::Infeasible { farkas } => {
            let witness = FarkasWitness {
                values: atoms
                    .iter()
                    .zip(farkas)
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(a, y)| (a.representative(), y))
                    .collect(),
            };
            if !witness.certifies(h) {
                return Err(SolveError::Lp("infeasibility certificate check failed".into()));
            }
            Ok(Balance::Unbalanced { witness })
        }
        LpOutcome::Unbounded => Err(SolveError::Lp("feasibility LP reported unbounded".into())),
    }
}

/// All maximal matchings (maximal independent sets of the intersection
/// graph), each ascending, in lexicographic order.
pub fn maximal_matchings(h: &DIntervalFamily, cap: usize) -> Result<Vec<Vec<usize>>, SolveError> {
    let g = Graph::intersection(h);
    let n = g.len();
    // maximal cliques of the complement via Bron-Kerbosch with pivoting
    let comp: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut s = g.neighbors(v).clone();
            s.toggle_range(..);
            s.set(v, false);
            s
        })
        .collect();
    let mut out = Vec::new();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    bron_kerbosch(&comp, &mut Vec::new(), all, FixedBitSet::with_capacity(n), &mut out, cap)?;
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<(), SolveError> {
    if p.is_clear() && x.is_clear() {
        if !r.is_empty() {
            if out.len() >= cap {
                return Err(SolveError::BudgetExceeded { solver: "chi_star_e", limit: cap as u64 });
            }
            let mut m = r.clone();
            m.sort_unstable();
            out.push(m);
        }
        return Ok(());
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| adj[u].intersection(&p).count())
        .expect("p or x non-empty");
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    for v in candidates.ones().collect::<Vec<_>>() {
        r.push(v);
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        bron_kerbosch(adj, r, np, nx, out, cap)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}

/// Optimal fractional edge coloring: positive weights on maximal matchings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    #[serde(with = "rational::pq")]
    pub value: Rational,
    pub matchings: Vec<Vec<usize>>,
    #[serde(with = "rational_vec")]
    pub weights: Vec<Rational>,
}

impl FractionalColoring {
    /// Every edge receives total weight at least 1.
    pub fn covers_all(&self, edges: usize) -> bool {
        (0..edges).all(|e| {
            let s: Rational = self
                .matchings
                .iter()
                .zip(&self.weights)
                .filter(|(m, _)| m.contains(&e))
                .map(|(_, f)| f.clone())
                .sum();
            s >= Rational::one()
        })
    }
}

/// `chi*_e(H)` by LP over the explicitly enumerated maximal matchings.
pub fn chi_star_e(h: &DIntervalFamily, budget: &SearchBudget) -> Result<FractionalColoring, SolveError> {
    check_family(h)?;
    let matchings = maximal_matchings(h, budget.max_matchings)?;
    // dual packing: max sum z_e with z[M] <= 1 for every maximal matching
    let mut lp = LinearProgram::new(vec![Rational::one(); h.len()]);
    for m in &matchings {
        let mut row = vec![Rational::zero(); h.len()];
        m.iter().for_each(|&e| row[e] = Rational::one());
        lp.add(row, Relation::Le, Rational::one());
    }
    let sol = match lp.solve() {
        LpOutcome::Optimal(s) => s,
        other => return Err(SolveError::Lp(format!("coloring LP not optimal: {other:?}"))),
    };
    let (kept, weights): (Vec<_>, Vec<_>) = matchings
        .into_iter()
        .zip(sol.dual)
        .filter(|(_, f)| f.is_positive())
        .unzip();
    let coloring = FractionalColoring { value: sol.value, matchings: kept, weights };
    let total: Rational = coloring.weights.iter().cloned().sum();
    if total != coloring.value || !coloring.covers_all(h.len()) {
        return Err(SolveError::Lp("fractional coloring certificate check failed".into()));
    }
    Ok(coloring)
}

mod rational_vec {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational::to_pq))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| rational::parse_pq(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Point maps serialize as `[{"line":..,"pos":..,"value":"p/q"}]`.
mod point_map {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        line: usize,
        pos: u64,
        value: String,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Point, Rational>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(p, v)| Entry { line: p.line, pos: p.pos, value: rational::to_pq(v) }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Point, Rational>, D::Error> {
        Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| {
                rational::parse_pq(&e.value)
                    .map(|v| (Point::new(e.line, e.pos), v))
                    .map_err(D::Error::custom)
            })
            .collect()
    }
}
