//! Constructive procedures behind the classical bounds, and exact verifiers
//! for every bound and conjectured bound.

mod coloring;
mod piercing;
mod report;
mod rounding;
mod total_size;
mod turan;

pub use coloring::{greedy_edge_coloring, GreedyColoring};
pub use piercing::{build_piercing_digraph, find_heavy_point, HeavyPoint, PiercingArc, PiercingDigraph};
pub use report::{
    compute_invariants, evaluate_rows, instance_id, verify_bounds, BoundReport, BoundRow, Invariant,
    InvariantTable, RowKind,
};
pub use rounding::round_cover;
pub use total_size::{total_size_matching, TotalSizeMatching};
pub use turan::{directed_turan_bound, weighted_turan_bound, TuranCheck};
