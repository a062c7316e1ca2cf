//! Dense two-phase primal simplex over exact rationals.
//!
//! Bland's smallest-index rule is used for both the entering and the leaving
//! variable, so the method terminates on degenerate problems.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize c.x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// One dual value per constraint: `>= 0` on `Le` rows, `<= 0` on `Ge`
    /// rows, free on `Eq` rows; `A^T y >= c` and `b.y = value`.
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// `y` with `A^T y >= 0` and `b.y < 0`, signed like the optimal duals.
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram { objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Structural(usize),
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    kinds: Vec<Column>,
    basis: Vec<usize>,
    /// Column that formed the identity for each row in the initial basis.
    identity: Vec<usize>,
    /// +1 or -1: row scaling applied to make the right-hand side non-negative.
    sign: Vec<Rational>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let n = lp.num_vars();
        let mut kinds: Vec<Column> = (0..n).map(Column::Structural).collect();
        let mut slack_of = vec![None; m];
        for (i, c) in lp.constraints.iter().enumerate() {
            if c.relation != Relation::Eq {
                slack_of[i] = Some(kinds.len());
                kinds.push(Column::Slack);
            }
        }
        let sign: Vec<Rational> = lp
            .constraints
            .iter()
            .map(|c| if c.rhs.is_negative() { -Rational::one() } else { Rational::one() })
            .collect();
        // a slack with coefficient +1 after scaling can start in the basis
        let mut identity = vec![usize::MAX; m];
        for (i, c) in lp.constraints.iter().enumerate() {
            let slack_coeff_positive = match c.relation {
                Relation::Le => sign[i].is_positive(),
                Relation::Ge => sign[i].is_negative(),
                Relation::Eq => false,
            };
            if slack_coeff_positive {
                identity[i] = slack_of[i].expect("inequality has a slack");
            } else {
                identity[i] = kinds.len();
                kinds.push(Column::Artificial);
            }
        }
        let width = kinds.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a * &sign[i];
            }
            if let Some(s) = slack_of[i] {
                let unit = if c.relation == Relation::Le { Rational::one() } else { -Rational::one() };
                row[s] = unit * &sign[i];
            }
            if kinds[identity[i]] == Column::Artificial {
                row[identity[i]] = Rational::one();
            }
            rows.push(row);
            rhs.push(&c.rhs * &sign[i]);
        }
        Tableau { rows, rhs, kinds, basis: identity.clone(), identity, sign }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    /// Reduced-cost row `c_B B^-1 A - c` for the given column costs.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        (0..self.width())
            .map(|j| {
                let mut z = -cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                        z += &cost[b] * &self.rows[r][j];
                    }
                }
                z
            })
            .collect()
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .fold(Rational::zero(), |a, b| a + b)
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][j].is_zero() {
                continue;
            }
            let f = self.rows[k][j].clone();
            for (x, y) in self.rows[k].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[k] -= &f * &pivot_rhs;
        }
        self.basis[r] = j;
    }

    /// Runs Bland-rule iterations maximizing `cost`. Returns `false` on an
    /// unbounded direction.
    fn optimize(&mut self, cost: &[Rational], allow: impl Fn(Column) -> bool) -> bool {
        loop {
            let z = self.reduced_costs(cost);
            let entering = (0..self.width()).find(|&j| allow(self.kinds[j]) && z[j].is_negative());
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }

    /// `y_i = sign_i * (c_B B^-1)_i`, read off the initial identity columns.
    fn duals(&self, cost: &[Rational]) -> Vec<Rational> {
        (0..self.rows.len())
            .map(|i| {
                let col = self.identity[i];
                let mut u = Rational::zero();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][col].is_zero() {
                        u += &cost[b] * &self.rows[r][col];
                    }
                }
                u * &self.sign[i]
            })
            .collect()
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let has_artificials = self.kinds.contains(&Column::Artificial);
        if has_artificials {
            let phase1: Vec<Rational> = self
                .kinds
                .iter()
                .map(|k| if *k == Column::Artificial { -Rational::one() } else { Rational::zero() })
                .collect();
            self.optimize(&phase1, |_| true);
            if self.objective(&phase1).is_negative() {
                return LpOutcome::Infeasible { farkas: self.duals(&phase1) };
            }
            self.drive_out_artificials();
        }
        let mut cost = vec![Rational::zero(); self.width()];
        for (j, c) in lp.objective.iter().enumerate() {
            cost[j] = c.clone();
        }
        if !self.optimize(&cost, |k| k != Column::Artificial) {
            return LpOutcome::Unbounded;
        }
        let mut primal = vec![Rational::zero(); lp.num_vars()];
        for (r, &b) in self.basis.iter().enumerate() {
            if let Column::Structural(j) = self.kinds[b] {
                primal[j] = self.rhs[r].clone();
            }
        }
        LpOutcome::Optimal(LpSolution {
            value: self.objective(&cost),
            primal,
            dual: self.duals(&cost),
        })
    }

    fn drive_out_artificials(&mut self) {
        for r in 0..self.rows.len() {
            if self.kinds[self.basis[r]] != Column::Artificial {
                continue;
            }
            let replacement = (0..self.width())
                .find(|&j| self.kinds[j] != Column::Artificial && !self.rows[r][j].is_zero());
            // no replacement: the row is redundant and stays inert at zero
            if let Some(j) = replacement {
                self.pivot(r, j);
            }
        }
    }
}
