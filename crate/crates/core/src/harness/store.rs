use std::cmp::Ordering;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::witness::{Witness, SCHEMA_VERSION};
use crate::ground::covered_point_count;
use crate::rational::{self, Rational};

/// Overrides the witness store directory.
pub const STORE_ENV: &str = "DINTERVAL_STORE";
const MANIFEST: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub target: String,
    #[serde(with = "rational::pq_opt")]
    pub ratio: Option<Rational>,
    pub edges: usize,
    pub ground_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub witnesses: Vec<ManifestEntry>,
}

/// Store directory: explicit flag, then the environment, then the config,
/// then `./witnesses`.
pub fn store_dir(flag: Option<&Path>, config: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(STORE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    config.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("witnesses"))
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io { path: path.to_path_buf(), source }
}

fn file_name(json: &str) -> String {
    let digest = Sha256::digest(json.as_bytes());
    format!("{}.json", hex::encode(&digest[..8]))
}

fn entry_order(a: &ManifestEntry, b: &ManifestEntry) -> Ordering {
    a.target
        .cmp(&b.target)
        .then_with(|| b.ratio.cmp(&a.ratio))
        .then_with(|| (a.edges, a.ground_size, &a.file).cmp(&(b.edges, b.ground_size, &b.file)))
}

fn read_manifest(dir: &Path) -> Result<Option<Manifest>, StoreError> {
    let path = dir.join(MANIFEST);
    match fs::read_to_string(&path) {
        Ok(s) => serde_json::from_str(&s).map(Some).map_err(|source| StoreError::Json { path, source }),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(StoreError::Io { path, source: e }),
    }
}

/// Writes one content-addressed file per witness and merges them into the
/// manifest. Rewriting the same witnesses leaves the store unchanged.
pub fn write_store(dir: &Path, witnesses: &[Witness]) -> Result<Manifest, StoreError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut manifest =
        read_manifest(dir)?.unwrap_or(Manifest { schema_version: SCHEMA_VERSION, witnesses: Vec::new() });
    for w in witnesses {
        let json = w.to_json();
        let file = file_name(&json);
        let path = dir.join(&file);
        if fs::read_to_string(&path).ok().as_deref() != Some(json.as_str()) {
            fs::write(&path, &json).map_err(io_err(&path))?;
        }
        if manifest.witnesses.iter().all(|e| e.file != file) {
            manifest.witnesses.push(ManifestEntry {
                file,
                target: w.target.clone(),
                ratio: w.target_ratio().cloned(),
                edges: w.instance.family.len(),
                ground_size: covered_point_count(&w.instance.family),
            });
        }
    }
    manifest.witnesses.sort_by(entry_order);
    let path = dir.join(MANIFEST);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, text).map_err(io_err(&path))?;
    Ok(manifest)
}

/// Loads every witness listed in the manifest (or, without one, every JSON
/// file in the directory).
pub fn load_store(dir: &Path) -> Result<Vec<(PathBuf, Witness)>, StoreError> {
    let files: Vec<PathBuf> = match read_manifest(dir)? {
        Some(m) => m.witnesses.iter().map(|e| dir.join(&e.file)).collect(),
        None => {
            let mut v: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(io_err(dir))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            v.sort();
            v
        }
    };
    files
        .into_iter()
        .map(|path| {
            let s = fs::read_to_string(&path).map_err(io_err(&path))?;
            let w = Witness::from_json(&s).map_err(|source| StoreError::Json { path: path.clone(), source })?;
            Ok((path, w))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SearchBudget;
    use crate::harness::{replay_witness, run_search, Range, SearchConfig, Target};

    #[test]
    fn store_round_trip_and_replay() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = SearchConfig::new(Target::TauWOverNuW, Range::new(1, 2), Range::new(2, 5), Range::new(4, 6), 20, 3);
        cfg.weight_max = 4;
        cfg.top_k = 4;
        let s = run_search(&cfg, &mut |_| {}).unwrap();
        let m = write_store(dir.path(), &s.retained).unwrap();
        assert_eq!(m.witnesses.len(), s.retained.len());
        let manifest_text = fs::read_to_string(dir.path().join(MANIFEST)).unwrap();
        assert_eq!(write_store(dir.path(), &s.retained).unwrap(), m);
        assert_eq!(fs::read_to_string(dir.path().join(MANIFEST)).unwrap(), manifest_text);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), s.retained.len() + 1);
        let loaded = load_store(dir.path()).unwrap();
        assert_eq!(loaded.len(), s.retained.len());
        for (_, w) in loaded {
            assert!(replay_witness(&w, &SearchBudget::default()).matches());
        }
    }

    #[test]
    fn tampered_witness_fails_replay() {
        let cfg = SearchConfig::new(Target::TauStarOverNu, Range::new(2, 2), Range::new(3, 4), Range::new(4, 5), 3, 1);
        let mut w = run_search(&cfg, &mut |_| {}).unwrap().retained.remove(0);
        let nu = w.invariants.get_mut(&crate::bounds::Invariant::Nu).unwrap();
        *nu += Rational::from_integer(1.into());
        let r = replay_witness(&w, &SearchBudget::default());
        assert_eq!(r.mismatches.len(), 1);
    }
}
