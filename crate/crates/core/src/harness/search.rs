use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::witness::{Provenance, Witness, SCHEMA_VERSION};
use crate::bounds::{compute_invariants, evaluate_rows, Invariant, InvariantTable, RowKind};
use crate::error::SearchBudget;
use crate::family::DIntervalFamily;
use crate::generators::{gen_random, gen_walecki, RandomFamilySpec};
use crate::ground::covered_point_count;
use crate::instance::Instance;
use crate::rational::{self, from_int, Rational};

/// Conjectured ratio being pushed upward by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "tau_star/nu")]
    TauStarOverNu,
    #[serde(rename = "tau_w/nu_w")]
    TauWOverNuW,
    #[serde(rename = "tau_star_w/nu_w")]
    TauStarWOverNuW,
    #[serde(rename = "chi_e/(d*Delta)", alias = "chi_e/(d·Δ)")]
    ChiEOverDDelta,
}

impl Target {
    pub const ALL: [Target; 4] =
        [Target::TauStarOverNu, Target::TauWOverNuW, Target::TauStarWOverNuW, Target::ChiEOverDDelta];

    pub fn name(self) -> &'static str {
        match self {
            Target::TauStarOverNu => "tau_star/nu",
            Target::TauWOverNuW => "tau_w/nu_w",
            Target::TauStarWOverNuW => "tau_star_w/nu_w",
            Target::ChiEOverDDelta => "chi_e/(d*Delta)",
        }
    }

    fn parts(self) -> (Invariant, Invariant) {
        match self {
            Target::TauStarOverNu => (Invariant::TauStar, Invariant::Nu),
            Target::TauWOverNuW => (Invariant::TauW, Invariant::NuW),
            Target::TauStarWOverNuW => (Invariant::TauStarW, Invariant::NuW),
            Target::ChiEOverDDelta => (Invariant::ChiE, Invariant::MaxDegree),
        }
    }

    /// The ratio, when both sides are known and the denominator is positive.
    pub fn evaluate(self, d: usize, inv: &InvariantTable) -> Option<Rational> {
        let (num, den) = self.parts();
        let mut den = inv.get(den)?.clone();
        if self == Target::ChiEOverDDelta {
            den *= from_int(d as u64);
        }
        if den <= from_int(0) {
            return None;
        }
        Some(inv.get(num)? / den)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub min: u64,
    pub max: u64,
}

impl Range {
    pub fn new(min: u64, max: u64) -> Self {
        Range { min, max }
    }

    fn sample(self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(self.min..=self.max)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparatedMode {
    Separated,
    SingleLine,
    #[default]
    Both,
}

fn default_top_k() -> usize {
    10
}

fn default_component_len() -> u64 {
    3
}

fn default_weight_max() -> u64 {
    1
}

/// Search parameters. `line_length` is per line; single-line families get
/// `d * line_length` points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub target: Target,
    pub d: Range,
    pub edges: Range,
    pub line_length: Range,
    #[serde(default = "default_component_len")]
    pub max_component_len: u64,
    #[serde(default)]
    pub separated: SeparatedMode,
    #[serde(default = "default_weight_max")]
    pub weight_max: u64,
    pub iterations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_budget_secs: Option<f64>,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
    pub seed: u64,
    #[serde(default)]
    pub include_walecki: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub store_dir: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search config: {0}")]
    Config(String),
    #[error("config JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl SearchConfig {
    pub fn new(target: Target, d: Range, edges: Range, line_length: Range, iterations: u64, seed: u64) -> Self {
        SearchConfig {
            target,
            d,
            edges,
            line_length,
            max_component_len: default_component_len(),
            separated: SeparatedMode::Both,
            weight_max: default_weight_max(),
            iterations,
            time_budget_secs: None,
            top_k: default_top_k(),
            seed,
            include_walecki: false,
            max_nodes: None,
            store_dir: None,
        }
    }

    pub fn from_json(s: &str) -> Result<SearchConfig, SearchError> {
        let c: SearchConfig = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::Config(m));
        for (name, r) in [("d", self.d), ("edges", self.edges), ("line_length", self.line_length)] {
            if r.min == 0 || r.min > r.max {
                return bad(format!("{name} range must satisfy 1 <= min <= max"));
            }
        }
        if self.iterations == 0 || self.top_k == 0 {
            return bad("iterations and top_k must be positive".into());
        }
        if self.max_component_len == 0 || self.weight_max == 0 {
            return bad("max_component_len and weight_max must be positive".into());
        }
        if let Some(t) = self.time_budget_secs {
            if !(t.is_finite() && t > 0.0) {
                return bad("time_budget_secs must be positive".into());
            }
        }
        if self.max_nodes == Some(0) {
            return bad("max_nodes must be positive".into());
        }
        Ok(())
    }

    pub fn budget(&self) -> SearchBudget {
        match self.max_nodes {
            Some(n) => SearchBudget::with_max_nodes(n),
            None => SearchBudget::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub target: String,
    pub evaluated: u64,
    pub scored: u64,
    pub skipped_budget: u64,
    pub generation_failures: u64,
    pub errors: u64,
    /// Theorem rows that failed, as `"<provenance>: <row>"`.
    pub theorem_violations: Vec<String>,
    #[serde(with = "rational::pq_opt")]
    pub max_ratio: Option<Rational>,
    /// `(iteration, ratio)` each time the running maximum increased.
    pub running_max: Vec<(u64, String)>,
    pub timed_out: bool,
    #[serde(skip)]
    pub retained: Vec<Witness>,
}

enum Outcome {
    Scored(Box<Witness>, Vec<String>),
    Unscored(Vec<String>),
    Budget,
    GenFailed,
    Error,
}

struct Candidate {
    provenance: Provenance,
    instance: Option<Instance>,
}

fn random_candidate(cfg: &SearchConfig, iteration: u64) -> Candidate {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(iteration);
    let d = cfg.d.sample(&mut rng) as usize;
    let separated = match cfg.separated {
        SeparatedMode::Separated => true,
        SeparatedMode::SingleLine => false,
        SeparatedMode::Both => rng.gen_bool(0.5),
    };
    let edges = cfg.edges.sample(&mut rng) as usize;
    let mut line_length = cfg.line_length.sample(&mut rng);
    if !separated {
        line_length *= d as u64;
    }
    let spec = RandomFamilySpec::new(d, separated, line_length, edges, rng.gen())
        .with_max_component_len(cfg.max_component_len)
        .with_weights(1, cfg.weight_max);
    let instance = gen_random(&spec).ok().map(|(h, w)| {
        let weights = if w.is_unit() { None } else { Some(w) };
        Instance::new(h, weights)
    });
    Candidate { provenance: Provenance { source: "random".into(), seed: cfg.seed, iteration }, instance }
}

fn candidates(cfg: &SearchConfig) -> (Vec<Candidate>, Vec<u64>) {
    let mut fixed = Vec::new();
    if cfg.include_walecki {
        for d in cfg.d.min.max(2)..=cfg.d.max {
            fixed.push(Candidate {
                provenance: Provenance { source: "walecki".into(), seed: d, iteration: d },
                instance: gen_walecki(d as usize).ok().map(Instance::unweighted),
            });
        }
    }
    (fixed, (0..cfg.iterations).collect())
}

fn evaluate(cfg: &SearchConfig, budget: &SearchBudget, c: Candidate) -> Outcome {
    let Some(instance) = c.instance else {
        return Outcome::GenFailed;
    };
    let h: &DIntervalFamily = &instance.family;
    let w = instance.weights_or_unit();
    let table = compute_invariants(h, &w, &Invariant::ALL, budget);
    let violations: Vec<String> = evaluate_rows(h, &table)
        .into_iter()
        .filter(|r| r.kind == RowKind::Theorem && r.holds == Some(false))
        .map(|r| format!("{}#{}: {}", c.provenance.source, c.provenance.iteration, r.name))
        .collect();
    let Some(score) = cfg.target.evaluate(h.d, &table) else {
        let (num, den) = cfg.target.parts();
        let failed = |i| table.errors.get(&i);
        return match (failed(num), failed(den)) {
            (None, None) => Outcome::Unscored(violations),
            (a, b) if a.or(b).is_some_and(|e| e.contains("budget")) => Outcome::Budget,
            _ => Outcome::Error,
        };
    };
    let mut ratios = BTreeMap::new();
    for t in Target::ALL {
        if let Some(r) = t.evaluate(h.d, &table) {
            ratios.insert(t.name().to_string(), r);
        }
    }
    debug_assert_eq!(ratios.get(cfg.target.name()), Some(&score));
    let witness = Witness {
        schema_version: SCHEMA_VERSION,
        target: cfg.target.name().to_string(),
        instance,
        invariants: table.values,
        ratios,
        provenance: c.provenance,
        timestamp: None,
    };
    Outcome::Scored(Box::new(witness), violations)
}

/// Descending ratio, then smaller instance, then serialization.
pub(crate) fn rank(a: &Witness, b: &Witness) -> Ordering {
    let key = |w: &Witness| {
        (
            w.instance.family.len(),
            covered_point_count(&w.instance.family),
            w.instance.to_json(),
        )
    };
    b.target_ratio().cmp(&a.target_ratio()).then_with(|| key(a).cmp(&key(b)))
}

const CHUNK: usize = 32;

/// Generate-and-test search. The retained witnesses (best `top_k`, ranked)
/// are returned in the summary; nothing is written to disk here.
pub fn run_search(cfg: &SearchConfig, progress: &mut dyn FnMut(&str)) -> Result<SearchSummary, SearchError> {
    cfg.validate()?;
    let budget = cfg.budget();
    let start = Instant::now();
    let deadline = cfg.time_budget_secs.map(Duration::from_secs_f64);
    let mut summary = SearchSummary { target: cfg.target.name().to_string(), ..Default::default() };
    let mut pool: Vec<Witness> = Vec::new();

    let (fixed, iterations) = candidates(cfg);
    let mut batches: Vec<Vec<Candidate>> = vec![fixed];
    let mut pending = iterations.chunks(CHUNK).map(|c| c.to_vec());

    loop {
        let batch = match batches.pop() {
            Some(b) => b,
            None => match pending.next() {
                Some(its) => its.into_iter().map(|i| random_candidate(cfg, i)).collect(),
                None => break,
            },
        };
        let labels: Vec<u64> = batch.iter().map(|c| c.provenance.iteration).collect();
        let outcomes: Vec<Outcome> = batch.into_par_iter().map(|c| evaluate(cfg, &budget, c)).collect();
        for (label, outcome) in labels.into_iter().zip(outcomes) {
            summary.evaluated += 1;
            match outcome {
                Outcome::Scored(w, v) => {
                    summary.scored += 1;
                    summary.theorem_violations.extend(v);
                    let r = w.target_ratio().cloned();
                    if r > summary.max_ratio {
                        let r = r.expect("scored witness has a ratio");
                        progress(&format!("{} #{label}: max {} = {}", w.provenance.source, cfg.target, rational::display(&r)));
                        summary.running_max.push((label, rational::to_pq(&r)));
                        summary.max_ratio = Some(r);
                    }
                    pool.push(*w);
                }
                Outcome::Unscored(v) => summary.theorem_violations.extend(v),
                Outcome::Budget => summary.skipped_budget += 1,
                Outcome::GenFailed => summary.generation_failures += 1,
                Outcome::Error => summary.errors += 1,
            }
        }
        pool.sort_by(rank);
        pool.truncate(cfg.top_k);
        if deadline.is_some_and(|d| start.elapsed() >= d) && pending.len() > 0 {
            summary.timed_out = true;
            progress("time budget exhausted");
            break;
        }
    }
    summary.retained = pool;
    Ok(summary)
}
