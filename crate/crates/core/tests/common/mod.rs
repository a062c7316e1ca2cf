//! Brute-force oracles and instance sources shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use dinterval::generators::{gen_random, gen_walecki, RandomFamilySpec};
use dinterval::{Component, DInterval, DIntervalFamily, Instance, Point, WeightSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn point_set(e: &DInterval) -> BTreeSet<Point> {
    e.components
        .iter()
        .flat_map(|c| (c.lo..=c.hi).map(move |pos| Point { line: c.line, pos }))
        .collect()
}

pub fn ground(h: &DIntervalFamily) -> Vec<Point> {
    h.edges.iter().flat_map(point_set).collect::<BTreeSet<_>>().into_iter().collect()
}

pub fn naive_intersects(a: &DInterval, b: &DInterval) -> bool {
    !point_set(a).is_disjoint(&point_set(b))
}

fn pairwise_disjoint(sets: &[BTreeSet<Point>], chosen: &[usize]) -> bool {
    chosen
        .iter()
        .enumerate()
        .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| sets[a].is_disjoint(&sets[b])))
}

/// Maximum weight of a set of pairwise disjoint edges, over all subsets.
pub fn naive_nu_w(h: &DIntervalFamily, w: &[u64]) -> u64 {
    let sets: Vec<_> = h.edges.iter().map(point_set).collect();
    let m = sets.len();
    assert!(m <= 16);
    (0u32..1 << m)
        .filter_map(|mask| {
            let chosen: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            pairwise_disjoint(&sets, &chosen).then(|| chosen.iter().map(|&i| w[i]).sum())
        })
        .max()
        .unwrap_or(0)
}

/// Minimum total multiplicity over every vector in `{0..=max w}^ground`.
pub fn naive_tau_w(h: &DIntervalFamily, w: &[u64]) -> u64 {
    let pts = ground(h);
    let sets: Vec<_> = h.edges.iter().map(point_set).collect();
    let top = w.iter().copied().max().unwrap_or(0);
    let base = top + 1;
    let total = base.checked_pow(pts.len() as u32).expect("small instance");
    assert!(total <= 2_000_000);
    let mut best = u64::MAX;
    let mut g = vec![0u64; pts.len()];
    for code in 0..total {
        let mut c = code;
        for slot in g.iter_mut() {
            *slot = c % base;
            c /= base;
        }
        let size: u64 = g.iter().sum();
        if size >= best {
            continue;
        }
        let ok = sets.iter().zip(w).all(|(s, &we)| {
            pts.iter().zip(&g).filter(|(p, _)| s.contains(p)).map(|(_, &n)| n).sum::<u64>() >= we
        });
        if ok {
            best = size;
        }
    }
    if h.edges.is_empty() {
        0
    } else {
        best
    }
}

/// Fewest blocks over all set partitions of the edges into matchings.
pub fn naive_chi_e(h: &DIntervalFamily) -> usize {
    let sets: Vec<_> = h.edges.iter().map(point_set).collect();
    let mut best = usize::MAX;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, sets: &[BTreeSet<Point>], blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
        if i == sets.len() {
            let ok = blocks.iter().all(|b| {
                b.iter().enumerate().all(|(k, &x)| b[k + 1..].iter().all(|&y| sets[x].is_disjoint(&sets[y])))
            });
            if ok {
                *best = (*best).min(blocks.len());
            }
            return;
        }
        for k in 0..blocks.len() {
            blocks[k].push(i);
            rec(i + 1, sets, blocks, best);
            blocks[k].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, sets, blocks, best);
        blocks.pop();
    }
    rec(0, &sets, &mut blocks, &mut best);
    if sets.is_empty() {
        0
    } else {
        best
    }
}

/// Largest number of edges through one point.
pub fn naive_max_degree(h: &DIntervalFamily) -> usize {
    let sets: Vec<_> = h.edges.iter().map(point_set).collect();
    ground(h).iter().map(|p| sets.iter().filter(|s| s.contains(p)).count()).max().unwrap_or(0)
}

/// Small family built directly from random components: at most `max_edges`
/// edges and at most `max_points` points in total across all lines.
pub fn small_family(rng: &mut ChaCha8Rng, max_edges: usize, max_points: u64) -> (DIntervalFamily, WeightSystem) {
    let d = rng.gen_range(1..=3usize);
    let separated = rng.gen_bool(0.5);
    let m = rng.gen_range(1..=max_edges);
    let (lines, len) = if separated { (d, max_points / d as u64) } else { (1, max_points) };
    let mut edges = Vec::new();
    while edges.len() < m {
        let mut comps = Vec::new();
        if separated {
            for line in 0..lines {
                let lo = rng.gen_range(1..=len);
                let hi = rng.gen_range(lo..=len.min(lo + 2));
                comps.push(Component { line, lo, hi });
            }
        } else {
            let k = rng.gen_range(1..=d);
            let mut pos = 1;
            for _ in 0..k {
                if pos > len {
                    break;
                }
                let lo = rng.gen_range(pos..=len.min(pos + 3));
                let hi = rng.gen_range(lo..=len.min(lo + 2));
                comps.push(Component { line: 0, lo, hi });
                pos = hi + 1;
            }
        }
        edges.push(DInterval { components: comps });
    }
    let line_lengths = vec![len; lines];
    let h = DIntervalFamily { d, separated, line_lengths, edges };
    assert!(h.validate().is_empty(), "{:?}", h.validate());
    let w = WeightSystem((0..m).map(|_| rng.gen_range(1..=2)).collect());
    (h, w)
}

/// Families whose edges tile the covered points: every point lies in
/// exactly one edge, so they always have a perfect fractional matching.
pub fn tiling(rng: &mut ChaCha8Rng) -> DIntervalFamily {
    let d = rng.gen_range(1..=3usize);
    let len = rng.gen_range(4..=9u64);
    let mut pieces: Vec<Vec<Component>> = (0..d).map(|_| Vec::new()).collect();
    for (line, slot) in pieces.iter_mut().enumerate() {
        let mut lo = 1;
        while lo <= len {
            let hi = (lo + rng.gen_range(0..3)).min(len);
            slot.push(Component { line, lo, hi });
            lo = hi + 1;
        }
    }
    let count = pieces.iter().map(Vec::len).max().unwrap();
    let edges = (0..count)
        .map(|i| DInterval { components: pieces.iter().filter_map(|p| p.get(i).copied()).collect() })
        .collect();
    DIntervalFamily { d, separated: true, line_lengths: vec![len; d], edges }
}

/// Seeded mixed corpus: random families from the library generator
/// (d <= 3, at most 8 edges, weights up to 5), tilings and Walecki families.
pub fn corpus(seed: u64, random: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..random {
        let d = rng.gen_range(1..=3);
        let separated = rng.gen_bool(0.5);
        let len = rng.gen_range(4..=8) * if separated { 1 } else { d as u64 };
        let spec = RandomFamilySpec::new(d, separated, len, rng.gen_range(1..=8), rng.gen())
            .with_max_component_len(3)
            .with_weights(1, rng.gen_range(1..=5));
        let (h, w) = gen_random(&spec).expect("generator succeeds on small specs");
        out.push(Instance::new(h, Some(w)));
    }
    for _ in 0..random / 5 {
        out.push(Instance::unweighted(tiling(&mut rng)));
    }
    for d in 2..=3 {
        out.push(Instance::unweighted(gen_walecki(d).unwrap()));
    }
    out.extend(regression_corpus().into_iter().map(|(_, i)| i));
    out
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn regression_corpus() -> Vec<(PathBuf, Instance)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files.into_iter().map(|p| (p.clone(), Instance::from_path(&p).unwrap())).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
