use super::GenError;
use crate::family::{Component, DInterval, DIntervalFamily};

/// Default edge-count guard for the length-threshold family.
pub const DEFAULT_MAX_EDGES: u128 = 20_000;

fn check(d: usize, n: u64, granularity: u64) -> Result<u64, GenError> {
    if d == 0 || n == 0 || granularity == 0 {
        return Err(GenError::InvalidSpec("d, n and granularity must be positive".into()));
    }
    if !granularity.is_multiple_of(n) {
        return Err(GenError::InvalidSpec(format!(
            "granularity {granularity} is not a multiple of n = {n}"
        )));
    }
    Ok(granularity / n)
}

/// Component-length vectors of length `d`, entries in `0..=g`, summing to
/// `total`, in lexicographic order.
fn length_vectors(d: usize, g: u64, total: u64) -> Vec<Vec<u64>> {
    fn rec(d: usize, g: u64, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == d {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for l in 0..=g.min(left) {
            cur.push(l);
            rec(d, g, left - l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, g, total, &mut Vec::new(), &mut out);
    out
}

fn placements(lengths: &[u64], g: u64) -> u128 {
    lengths
        .iter()
        .filter(|&&l| l > 0)
        .map(|&l| (g - l + 1) as u128)
        .product()
}

fn emit(lengths: &[u64], g: u64, out: &mut Vec<DInterval>) {
    fn rec(lengths: &[u64], g: u64, line: usize, cur: &mut Vec<Component>, out: &mut Vec<DInterval>) {
        if line == lengths.len() {
            out.push(DInterval::new(cur.clone()));
            return;
        }
        let l = lengths[line];
        if l == 0 {
            return rec(lengths, g, line + 1, cur, out);
        }
        for lo in 1..=g - l + 1 {
            cur.push(Component::new(line, lo, lo + l - 1));
            rec(lengths, g, line + 1, cur, out);
            cur.pop();
        }
    }
    rec(lengths, g, 0, &mut Vec::new(), out);
}

/// Number of edges [`gen_length_threshold`] would produce.
pub fn threshold_edge_count(d: usize, n: u64, granularity: u64) -> Result<u128, GenError> {
    let t = check(d, n, granularity)?;
    Ok(length_vectors(d, granularity, t + 1)
        .iter()
        .map(|l| placements(l, granularity))
        .sum())
}

/// Separated d-intervals on `d` lines of `granularity` points each whose
/// total size exceeds `granularity / n`, restricted to the inclusion-minimal
/// ones (exactly `granularity / n + 1` points).
pub fn gen_length_threshold(d: usize, n: u64, granularity: u64) -> Result<DIntervalFamily, GenError> {
    gen_length_threshold_capped(d, n, granularity, DEFAULT_MAX_EDGES)
}

pub fn gen_length_threshold_capped(
    d: usize,
    n: u64,
    granularity: u64,
    max_edges: u128,
) -> Result<DIntervalFamily, GenError> {
    let t = check(d, n, granularity)?;
    let count = threshold_edge_count(d, n, granularity)?;
    if count > max_edges {
        return Err(GenError::TooLarge { count, limit: max_edges });
    }
    let mut edges = Vec::with_capacity(count as usize);
    for lengths in length_vectors(d, granularity, t + 1) {
        emit(&lengths, granularity, &mut edges);
    }
    Ok(DIntervalFamily::new(d, true, vec![granularity; d], edges))
}

/// Same family without the minimality restriction: every edge with more
/// than `granularity / n` points.
pub fn gen_length_threshold_all(
    d: usize,
    n: u64,
    granularity: u64,
    max_edges: u128,
) -> Result<DIntervalFamily, GenError> {
    let t = check(d, n, granularity)?;
    let vectors: Vec<Vec<u64>> = (t + 1..=granularity * d as u64)
        .flat_map(|total| length_vectors(d, granularity, total))
        .collect();
    let count: u128 = vectors.iter().map(|l| placements(l, granularity)).sum();
    if count > max_edges {
        return Err(GenError::TooLarge { count, limit: max_edges });
    }
    let mut edges = Vec::new();
    for lengths in vectors {
        emit(&lengths, granularity, &mut edges);
    }
    Ok(DIntervalFamily::new(d, true, vec![granularity; d], edges))
}
