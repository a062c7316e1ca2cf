//! Exact matching, cover and coloring invariants of weighted d-interval
//! hypergraphs, the constructive procedures behind their classical bounds,
//! extremal families, and a search harness for conjectured bounds.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod exact;
pub mod family;
pub mod generators;
pub mod graph;
pub mod ground;
pub mod harness;
pub mod instance;
pub mod lp;
pub mod rational;

pub use error::{SearchBudget, SolveError};
pub use family::{intersects, covers_count, Component, DInterval, DIntervalFamily, Point, WeightSystem};
pub use instance::Instance;
pub use rational::Rational;
