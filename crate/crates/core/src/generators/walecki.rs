use super::GenError;
use crate::family::{Component, DInterval, DIntervalFamily};

/// Decomposition of `K_{2d}` into `d` Hamiltonian paths (vertices `0..2d`).
///
/// Path `j` is the zig-zag `j, j+1, j-1, j+2, j-2, ..., j+d` taken mod `2d`;
/// its steps have lengths `1, 2, ..., 2d-1`, and rotating it by `j` gives
/// each difference class exactly once per path.
pub fn walecki_paths(d: usize) -> Vec<Vec<usize>> {
    let n = 2 * d;
    (0..d)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let step = k.div_ceil(2);
                    if k % 2 == 1 {
                        (j + step) % n
                    } else {
                        (j + n - step) % n
                    }
                })
                .collect()
        })
        .collect()
}

/// Separated family with `nu = 1` and `tau = tau* = d`.
///
/// Reading path `j` as a permutation `pi_j` of `1..=2d`, edge `e_i` has the
/// component `[pi_j^-1(i), pi_j^-1(i) + 1]` on line `j`. Each line has
/// `2d + 1` points.
pub fn gen_walecki(d: usize) -> Result<DIntervalFamily, GenError> {
    if d < 2 {
        return Err(GenError::InvalidSpec(format!("walecki needs d >= 2, got {d}")));
    }
    let n = 2 * d;
    let mut position = vec![vec![0u64; n]; d];
    for (j, path) in walecki_paths(d).iter().enumerate() {
        for (p, &v) in path.iter().enumerate() {
            position[j][v] = p as u64 + 1;
        }
    }
    let edges = (0..n)
        .map(|i| {
            DInterval::new(
                (0..d)
                    .map(|j| Component::new(j, position[j][i], position[j][i] + 1))
                    .collect(),
            )
        })
        .collect();
    Ok(DIntervalFamily::new(d, true, vec![n as u64 + 1; d], edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn paths_partition_complete_graph() {
        for d in 1..=7 {
            let n = 2 * d;
            let mut seen = BTreeSet::new();
            for path in walecki_paths(d) {
                let verts: BTreeSet<_> = path.iter().copied().collect();
                assert_eq!(verts.len(), n, "path is Hamiltonian");
                for w in path.windows(2) {
                    assert!(seen.insert((w[0].min(w[1]), w[0].max(w[1]))), "edge reused");
                }
            }
            assert_eq!(seen.len(), d * (2 * d - 1));
        }
    }

    #[test]
    fn walecki_family_is_valid_and_intersecting() {
        for d in 2..=5 {
            let h = gen_walecki(d).unwrap();
            assert!(h.validate().is_empty());
            assert_eq!(h.len(), 2 * d);
            for a in 0..h.len() {
                for b in a + 1..h.len() {
                    assert!(h.intersects(a, b));
                }
            }
            assert_eq!(h.max_degree(), 2);
        }
    }

    #[test]
    fn even_points_of_first_line_cover() {
        for d in 2..=5 {
            let h = gen_walecki(d).unwrap();
            let cover: Vec<_> = (1..=d as u64).map(|k| crate::family::Point::new(0, 2 * k)).collect();
            assert!(h.edges.iter().all(|e| cover.iter().any(|&p| e.contains(p))));
        }
    }

    #[test]
    fn rejects_small_d() {
        assert!(gen_walecki(1).is_err());
    }
}
