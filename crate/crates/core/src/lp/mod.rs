//! Exact fractional invariants: `tau*_w = nu*_w`, balancedness and the
//! fractional edge chromatic number.

mod fractional;
pub mod simplex;

pub use fractional::{
    chi_star_e, is_balanced, maximal_matchings, tau_star, tau_star_w, Balance, FarkasWitness,
    FractionalColoring, FractionalCover, FractionalMatching, FractionalSolution, GroundSet,
};
pub use simplex::{Constraint, LinearProgram, LpOutcome, LpSolution, Relation};
