//! Extremal families and seeded random instances.

mod random;
mod threshold;
mod walecki;

pub use random::{gen_random, RandomFamilySpec};
pub use threshold::{
    gen_length_threshold, gen_length_threshold_all, gen_length_threshold_capped, threshold_edge_count,
};
pub use walecki::{gen_walecki, walecki_paths};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidSpec(String),
    #[error("family would have {count} edges, above the limit of {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("edge {edge}: no valid draw after {retries} attempts")]
    RejectionFailed { edge: usize, retries: u32 },
}
