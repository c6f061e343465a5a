//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use qsym_core::composition::Triple;
use qsym_core::graph::IntMatrix;

/// Counts degree-(m, n) paths by walking edges: `n` edges of `g2` followed
/// by `m` edges of `g1`. Entry `[w][v]` counts paths from `v` to `w`.
pub fn brute_force_skeleton(t: &Triple, m: usize, n: usize) -> IntMatrix {
    let size = t.vertex_count();
    let mut out = IntMatrix::zeros(size);
    fn walk(t: &Triple, at: usize, g2_left: usize, g1_left: usize, start: usize, out: &mut IntMatrix) {
        if g2_left > 0 {
            for e in t.g2.edges().iter().filter(|e| e.source == at) {
                walk(t, e.target, g2_left - 1, g1_left, start, out);
            }
        } else if g1_left > 0 {
            for e in t.g1.edges().iter().filter(|e| e.source == at) {
                walk(t, e.target, 0, g1_left - 1, start, out);
            }
        } else {
            let c = out.get(at, start);
            out.set(at, start, c + 1);
        }
    }
    for v in 0..size {
        walk(t, v, n, m, v, &mut out);
    }
    out
}

/// 1-based matrix position to 0-based `[row, col]`.
pub fn one_based(i: usize, j: usize) -> [usize; 2] {
    [i - 1, j - 1]
}

/// Seed for randomized checks: `QSYM_SEED` if set, else a fixed default.
pub fn seed() -> u64 {
    std::env::var("QSYM_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_611)
}
