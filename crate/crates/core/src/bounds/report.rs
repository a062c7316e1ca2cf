use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::total_size::total_size_matching;
use crate::error::{SearchBudget, SolveError};
use crate::exact::{chi_e, nu_w, tau_w};
use crate::family::{DIntervalFamily, WeightSystem};
use crate::instance::Instance;
use crate::lp::{chi_star_e, tau_star_w};
use crate::rational::{self, from_int, ratio, Rational};

/// Named invariants computed for a report or a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Edges,
    MaxDegree,
    Nu,
    Tau,
    TauStar,
    NuW,
    TauW,
    TauStarW,
    ChiE,
    ChiStarE,
    /// Maximum total size of a matching.
    NuL,
    /// Points covered by some edge.
    GroundSize,
    /// 1 when a perfect fractional matching exists, else 0.
    Balanced,
}

impl Invariant {
    pub const ALL: [Invariant; 13] = [
        Invariant::Edges,
        Invariant::MaxDegree,
        Invariant::Nu,
        Invariant::Tau,
        Invariant::TauStar,
        Invariant::NuW,
        Invariant::TauW,
        Invariant::TauStarW,
        Invariant::ChiE,
        Invariant::ChiStarE,
        Invariant::NuL,
        Invariant::GroundSize,
        Invariant::Balanced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Edges => "edges",
            Invariant::MaxDegree => "max_degree",
            Invariant::Nu => "nu",
            Invariant::Tau => "tau",
            Invariant::TauStar => "tau_star",
            Invariant::NuW => "nu_w",
            Invariant::TauW => "tau_w",
            Invariant::TauStarW => "tau_star_w",
            Invariant::ChiE => "chi_e",
            Invariant::ChiStarE => "chi_star_e",
            Invariant::NuL => "nu_l",
            Invariant::GroundSize => "ground_size",
            Invariant::Balanced => "balanced",
        }
    }

    pub fn from_name(s: &str) -> Option<Invariant> {
        Invariant::ALL.into_iter().find(|i| i.name() == s)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact invariant values, plus the error for each one that failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTable {
    #[serde(with = "rational::pq_map")]
    pub values: BTreeMap<Invariant, Rational>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub errors: BTreeMap<Invariant, String>,
}

impl InvariantTable {
    pub fn get(&self, i: Invariant) -> Option<&Rational> {
        self.values.get(&i)
    }

    fn record(&mut self, i: Invariant, r: Result<Rational, SolveError>) {
        match r {
            Ok(v) => {
                self.values.insert(i, v);
            }
            Err(e) => {
                self.errors.insert(i, e.to_string());
            }
        }
    }
}

/// Computes the requested invariants (and whatever they share work with).
/// Failures are recorded per invariant instead of aborting.
pub fn compute_invariants(
    h: &DIntervalFamily,
    w: &WeightSystem,
    which: &[Invariant],
    budget: &SearchBudget,
) -> InvariantTable {
    let mut t = InvariantTable::default();
    let unit = WeightSystem::unit(h.len());
    let weighted = !w.is_unit();
    let wants = |i: Invariant| which.contains(&i);
    for &i in which {
        if t.values.contains_key(&i) || t.errors.contains_key(&i) {
            continue;
        }
        match i {
            Invariant::Edges => t.record(i, Ok(from_int(h.len() as u64))),
            Invariant::MaxDegree => t.record(i, Ok(from_int(h.max_degree() as u64))),
            Invariant::Nu | Invariant::NuW => {
                let r = nu_w(h, if i == Invariant::Nu { &unit } else { w }, budget);
                let v = r.map(|(v, _)| from_int(v));
                if !weighted && wants(Invariant::Nu) && wants(Invariant::NuW) {
                    t.record(Invariant::Nu, v.clone());
                    t.record(Invariant::NuW, v);
                } else {
                    t.record(i, v);
                }
            }
            Invariant::Tau | Invariant::TauW => {
                let r = tau_w(h, if i == Invariant::Tau { &unit } else { w }, budget);
                let v = r.map(|(v, _)| from_int(v));
                if !weighted && wants(Invariant::Tau) && wants(Invariant::TauW) {
                    t.record(Invariant::Tau, v.clone());
                    t.record(Invariant::TauW, v);
                } else {
                    t.record(i, v);
                }
            }
            Invariant::TauStar | Invariant::TauStarW => {
                let r = tau_star_w(h, if i == Invariant::TauStar { &unit } else { w });
                let v = r.map(|s| s.value);
                if !weighted && wants(Invariant::TauStar) && wants(Invariant::TauStarW) {
                    t.record(Invariant::TauStar, v.clone());
                    t.record(Invariant::TauStarW, v);
                } else {
                    t.record(i, v);
                }
            }
            Invariant::ChiE => t.record(i, chi_e(h, budget).map(|c| from_int(c.colors as u64))),
            Invariant::ChiStarE => t.record(i, chi_star_e(h, budget).map(|c| c.value)),
            Invariant::NuL | Invariant::GroundSize | Invariant::Balanced => {
                match total_size_matching(h, budget) {
                    Ok(s) => {
                        t.record(Invariant::NuL, Ok(from_int(s.value)));
                        t.record(Invariant::GroundSize, Ok(from_int(s.ground_size)));
                        t.record(Invariant::Balanced, Ok(from_int(u64::from(s.balanced))));
                    }
                    Err(e) => t.record(i, Err(e)),
                }
            }
        }
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Theorem,
    Conjecture,
}

/// One inequality `lhs <= rhs`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub name: String,
    pub kind: RowKind,
    #[serde(with = "rational::pq_opt")]
    pub lhs: Option<Rational>,
    #[serde(with = "rational::pq_opt")]
    pub rhs: Option<Rational>,
    pub holds: Option<bool>,
    /// `rhs - lhs`.
    #[serde(with = "rational::pq_opt")]
    pub slack: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub instance_id: String,
    pub d: usize,
    pub separated: bool,
    pub invariants: InvariantTable,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    /// No theorem row is violated (rows that could not be evaluated do not
    /// count as violations).
    pub fn theorems_hold(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.kind != RowKind::Theorem || r.holds != Some(false))
    }

    pub fn violations(&self) -> Vec<&BoundRow> {
        self.rows
            .iter()
            .filter(|r| r.kind == RowKind::Theorem && r.holds == Some(false))
            .collect()
    }

    pub fn has_errors(&self) -> bool {
        !self.invariants.errors.is_empty() || self.rows.iter().any(|r| r.error.is_some())
    }

    pub fn row(&self, name: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

type Sides = fn(&Ctx) -> (Rational, Rational);

struct RowSpec {
    name: &'static str,
    kind: RowKind,
    needs: &'static [Invariant],
    applies: fn(&Ctx) -> bool,
    sides: Sides,
}

struct Ctx<'a> {
    d: i64,
    separated: bool,
    inv: &'a InvariantTable,
}

impl Ctx<'_> {
    fn v(&self, i: Invariant) -> Rational {
        self.inv.values[&i].clone()
    }

    fn di(&self) -> Rational {
        from_int(self.d)
    }

    fn max_degree(&self) -> Option<i64> {
        self.inv.get(Invariant::MaxDegree).map(|r| r.to_integer().try_into().unwrap_or(i64::MAX))
    }
}

fn always(_: &Ctx) -> bool {
    true
}

use Invariant as I;

const ROWS: &[RowSpec] = &[
    RowSpec {
        name: "nu_w <= tau_star_w",
        kind: RowKind::Theorem,
        needs: &[I::NuW, I::TauStarW],
        applies: always,
        sides: |c| (c.v(I::NuW), c.v(I::TauStarW)),
    },
    RowSpec {
        name: "tau_star_w <= tau_w",
        kind: RowKind::Theorem,
        needs: &[I::TauStarW, I::TauW],
        applies: always,
        sides: |c| (c.v(I::TauStarW), c.v(I::TauW)),
    },
    RowSpec {
        name: "tau <= (d^2-d+1) nu",
        kind: RowKind::Theorem,
        needs: &[I::Tau, I::Nu],
        applies: always,
        sides: |c| (c.v(I::Tau), from_int(c.d * c.d - c.d + 1) * c.v(I::Nu)),
    },
    RowSpec {
        name: "tau <= (d^2-d) nu [separated]",
        kind: RowKind::Theorem,
        needs: &[I::Tau, I::Nu],
        applies: |c| c.separated && c.d >= 2,
        sides: |c| (c.v(I::Tau), from_int(c.d * c.d - c.d) * c.v(I::Nu)),
    },
    RowSpec {
        name: "tau_star <= 2d nu",
        kind: RowKind::Theorem,
        needs: &[I::TauStar, I::Nu],
        applies: always,
        sides: |c| (c.v(I::TauStar), from_int(2 * c.d) * c.v(I::Nu)),
    },
    RowSpec {
        name: "tau <= d tau_star",
        kind: RowKind::Theorem,
        needs: &[I::Tau, I::TauStar],
        applies: always,
        sides: |c| (c.v(I::Tau), c.di() * c.v(I::TauStar)),
    },
    RowSpec {
        name: "tau_star_w <= 2d nu_w",
        kind: RowKind::Theorem,
        needs: &[I::TauStarW, I::NuW],
        applies: always,
        sides: |c| (c.v(I::TauStarW), from_int(2 * c.d) * c.v(I::NuW)),
    },
    RowSpec {
        name: "tau_w <= d tau_star_w",
        kind: RowKind::Theorem,
        needs: &[I::TauW, I::TauStarW],
        applies: always,
        sides: |c| (c.v(I::TauW), c.di() * c.v(I::TauStarW)),
    },
    RowSpec {
        name: "tau_w <= 2d^2 nu_w",
        kind: RowKind::Theorem,
        needs: &[I::TauW, I::NuW],
        applies: always,
        sides: |c| (c.v(I::TauW), from_int(2 * c.d * c.d) * c.v(I::NuW)),
    },
    RowSpec {
        name: "tau_star <= (4d-6+3/d) nu",
        kind: RowKind::Theorem,
        needs: &[I::TauStar, I::Nu],
        applies: always,
        sides: |c| {
            let factor = from_int(4 * c.d - 6) + ratio(3, c.d);
            (c.v(I::TauStar), factor * c.v(I::Nu))
        },
    },
    RowSpec {
        name: "chi_e <= 2d (Delta-1)",
        kind: RowKind::Theorem,
        needs: &[I::ChiE, I::MaxDegree],
        applies: |c| c.max_degree().is_some_and(|m| m >= 2),
        sides: |c| (c.v(I::ChiE), from_int(2 * c.d) * (c.v(I::MaxDegree) - from_int(1))),
    },
    RowSpec {
        name: "chi_star_e <= chi_e",
        kind: RowKind::Theorem,
        needs: &[I::ChiStarE, I::ChiE],
        applies: always,
        sides: |c| (c.v(I::ChiStarE), c.v(I::ChiE)),
    },
    RowSpec {
        name: "Delta <= chi_star_e",
        kind: RowKind::Theorem,
        needs: &[I::MaxDegree, I::ChiStarE],
        applies: always,
        sides: |c| (c.v(I::MaxDegree), c.v(I::ChiStarE)),
    },
    RowSpec {
        name: "|E| / nu <= chi_star_e",
        kind: RowKind::Theorem,
        needs: &[I::Edges, I::Nu, I::ChiStarE],
        applies: |c| c.inv.get(I::Nu).is_some_and(|n| *n > from_int(0)),
        sides: |c| (c.v(I::Edges) / c.v(I::Nu), c.v(I::ChiStarE)),
    },
    RowSpec {
        name: "k/(2d) <= nu_l [balanced]",
        kind: RowKind::Theorem,
        needs: &[I::GroundSize, I::NuL, I::Balanced],
        applies: |c| c.inv.get(I::Balanced).is_some_and(|b| *b == from_int(1)),
        sides: |c| (c.v(I::GroundSize) / from_int(2 * c.d), c.v(I::NuL)),
    },
    RowSpec {
        name: "tau_star <= d nu [separated]",
        kind: RowKind::Conjecture,
        needs: &[I::TauStar, I::Nu],
        applies: |c| c.separated,
        sides: |c| (c.v(I::TauStar), c.di() * c.v(I::Nu)),
    },
    RowSpec {
        name: "tau_star_w <= d nu_w [separated]",
        kind: RowKind::Conjecture,
        needs: &[I::TauStarW, I::NuW],
        applies: |c| c.separated,
        sides: |c| (c.v(I::TauStarW), c.di() * c.v(I::NuW)),
    },
    RowSpec {
        name: "tau_w <= d^2 nu_w",
        kind: RowKind::Conjecture,
        needs: &[I::TauW, I::NuW],
        applies: always,
        sides: |c| (c.v(I::TauW), from_int(c.d * c.d) * c.v(I::NuW)),
    },
    RowSpec {
        name: "chi_e <= d Delta",
        kind: RowKind::Conjecture,
        needs: &[I::ChiE, I::MaxDegree],
        applies: always,
        sides: |c| (c.v(I::ChiE), c.di() * c.v(I::MaxDegree)),
    },
];

/// Evaluates every row whose invariants were requested. Rows whose
/// invariants failed carry the error instead of a verdict.
pub fn evaluate_rows(h: &DIntervalFamily, inv: &InvariantTable) -> Vec<BoundRow> {
    let ctx = Ctx { d: h.d as i64, separated: h.separated, inv };
    let mut rows = Vec::new();
    for spec in ROWS {
        let requested = spec
            .needs
            .iter()
            .all(|i| inv.values.contains_key(i) || inv.errors.contains_key(i));
        if !requested {
            continue;
        }
        let missing: Vec<String> = spec
            .needs
            .iter()
            .filter_map(|i| inv.errors.get(i).map(|e| format!("{i}: {e}")))
            .collect();
        if !missing.is_empty() {
            rows.push(BoundRow {
                name: spec.name.into(),
                kind: spec.kind,
                lhs: None,
                rhs: None,
                holds: None,
                slack: None,
                error: Some(missing.join("; ")),
            });
            continue;
        }
        if !(spec.applies)(&ctx) {
            continue;
        }
        let (lhs, rhs) = (spec.sides)(&ctx);
        rows.push(BoundRow {
            name: spec.name.into(),
            kind: spec.kind,
            holds: Some(lhs <= rhs),
            slack: Some(&rhs - &lhs),
            lhs: Some(lhs),
            rhs: Some(rhs),
            error: None,
        });
    }
    rows
}

/// Short content hash of the canonical instance JSON.
pub fn instance_id(inst: &Instance) -> String {
    let digest = Sha256::digest(inst.to_json().as_bytes());
    hex::encode(&digest[..8])
}

/// Computes every invariant and evaluates all applicable rows.
pub fn verify_bounds(inst: &Instance, budget: &SearchBudget) -> BoundReport {
    let h = &inst.family;
    let w = inst.weights_or_unit();
    let invariants = compute_invariants(h, &w, &Invariant::ALL, budget);
    let rows = evaluate_rows(h, &invariants);
    BoundReport { instance_id: instance_id(inst), d: h.d, separated: h.separated, invariants, rows }
}
