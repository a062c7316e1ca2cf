use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GenError;
use crate::family::{Component, DInterval, DIntervalFamily, WeightSystem};

fn default_retries() -> u32 {
    1000
}

/// Parameters of a seeded random family. The seed fully determines the
/// output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomFamilySpec {
    pub d: usize,
    pub separated: bool,
    /// Points per line.
    pub line_length: u64,
    pub edges: usize,
    /// Component lengths are drawn uniformly from `1..=max_component_len`.
    pub max_component_len: u64,
    pub weight_min: u64,
    pub weight_max: u64,
    pub seed: u64,
    #[serde(default = "default_retries")]
    pub max_retries: u32,
}

impl RandomFamilySpec {
    pub fn new(d: usize, separated: bool, line_length: u64, edges: usize, seed: u64) -> Self {
        RandomFamilySpec {
            d,
            separated,
            line_length,
            edges,
            max_component_len: (line_length / 3).max(1),
            weight_min: 1,
            weight_max: 1,
            seed,
            max_retries: default_retries(),
        }
    }

    pub fn with_weights(mut self, min: u64, max: u64) -> Self {
        self.weight_min = min;
        self.weight_max = max;
        self
    }

    pub fn with_max_component_len(mut self, len: u64) -> Self {
        self.max_component_len = len;
        self
    }

    fn check(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::InvalidSpec(m.to_string()));
        if self.d == 0 || self.line_length == 0 || self.max_component_len == 0 {
            return bad("d, line_length and max_component_len must be positive");
        }
        if self.weight_min == 0 || self.weight_min > self.weight_max {
            return bad("weights need 1 <= weight_min <= weight_max");
        }
        if self.max_retries == 0 {
            return bad("max_retries must be positive");
        }
        Ok(())
    }
}

fn draw_component(rng: &mut ChaCha8Rng, line: usize, spec: &RandomFamilySpec) -> Component {
    let len = rng.gen_range(1..=spec.max_component_len.min(spec.line_length));
    let lo = rng.gen_range(1..=spec.line_length - len + 1);
    Component::new(line, lo, lo + len - 1)
}

fn draw_edge(rng: &mut ChaCha8Rng, spec: &RandomFamilySpec) -> Option<DInterval> {
    let k = rng.gen_range(1..=spec.d);
    if spec.separated {
        let mut lines = sample(rng, spec.d, k).into_vec();
        lines.sort_unstable();
        let comps = lines.into_iter().map(|l| draw_component(rng, l, spec)).collect();
        return Some(DInterval::new(comps));
    }
    let mut comps: Vec<Component> = (0..k).map(|_| draw_component(rng, 0, spec)).collect();
    comps.sort();
    comps
        .windows(2)
        .all(|w| w[1].lo > w[0].hi)
        .then(|| DInterval::new(comps))
}

/// Deterministic pseudo-random family with weights; invalid draws are
/// rejected and redrawn.
pub fn gen_random(spec: &RandomFamilySpec) -> Result<(DIntervalFamily, WeightSystem), GenError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::with_capacity(spec.edges);
    let mut weights = Vec::with_capacity(spec.edges);
    for i in 0..spec.edges {
        let edge = (0..spec.max_retries)
            .find_map(|_| draw_edge(&mut rng, spec))
            .ok_or(GenError::RejectionFailed { edge: i, retries: spec.max_retries })?;
        edges.push(edge);
        weights.push(rng.gen_range(spec.weight_min..=spec.weight_max));
    }
    let lines = if spec.separated { spec.d } else { 1 };
    let h = DIntervalFamily::new(spec.d, spec.separated, vec![spec.line_length; lines], edges);
    debug_assert!(h.validate().is_empty());
    Ok((h, WeightSystem(weights)))
}
