//! Conjecture-ratio search, witness persistence and replay.

mod search;
mod store;
mod witness;

pub use search::{run_search, Range, SearchConfig, SearchError, SearchSummary, SeparatedMode, Target};
pub use store::{load_store, store_dir, write_store, Manifest, ManifestEntry, StoreError, STORE_ENV};
pub use witness::{replay_witness, Mismatch, Provenance, Replay, Witness, SCHEMA_VERSION};
