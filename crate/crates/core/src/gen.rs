//! Deterministic graph generators for tests, fixtures and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph, DEFAULT_MAX_WEIGHT};

fn build(n: usize, edges: Vec<(usize, usize, u64)>) -> Graph {
    let max = edges.iter().map(|e| e.2).max().unwrap_or(0).max(DEFAULT_MAX_WEIGHT);
    let edges = edges.into_iter().map(|(t, h, w)| Edge { tail: t as u32, head: h as u32, weight: w }).collect();
    Graph::from_edge_vec(n, edges, max)
}

/// Directed cycle `i -> i+1 mod n` with uniform weight.
pub fn cycle(n: usize, w: u64) -> Graph {
    assert!(n >= 1);
    build(n, (0..n).map(|i| (i, (i + 1) % n, w)).collect())
}

/// Directed path `0 -> 1 -> ... -> n-1`.
pub fn path(n: usize, w: u64) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i, w)).collect())
}

/// `m` edges with uniformly random endpoints (self-loops and parallel edges
/// included) and weights uniform in `[0, w_max]`.
pub fn random_digraph(n: usize, m: usize, w_max: u64, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m).map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..=w_max))).collect();
    build(n, edges)
}

/// `rows x cols` grid with edges in both directions between neighbors and
/// random weights in `[1, w_max]`.
pub fn bidirected_grid(rows: usize, cols: usize, w_max: u64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut link = |a: usize, b: usize| {
                edges.push((a, b, rng.random_range(1..=w_max)));
                edges.push((b, a, rng.random_range(1..=w_max)));
            };
            if c + 1 < cols {
                link(id(r, c), id(r, c + 1));
            }
            if r + 1 < rows {
                link(id(r, c), id(r + 1, c));
            }
        }
    }
    build(rows * cols, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    /// A vertex that is both in-heavy and out-heavy.
    ClosePair,
    /// An in-heavy and an out-heavy vertex more than `delta/4` apart.
    FarPair,
}

/// Instances that force one of the two heavy-vertex cases at diameter `delta`.
///
/// `ClosePair`: vertex 0 joined to `size - 1` leaves by edges in both
/// directions of weight `delta/8`, so vertex 0's balls hold every edge.
///
/// `FarPair`: `t = 0` feeds a ring of `size - 2` core vertices which all feed
/// `s = 1`; core weights are `delta/16`, so both `s` and `t` see every edge
/// within `delta/8`, and the only way from `s` back to `t` is one edge of
/// weight `delta/4 + 1`.
pub fn heavy_gadget(kind: GadgetKind, size: usize, delta: u64) -> Graph {
    assert!(size >= 4, "gadget size must be at least 4");
    match kind {
        GadgetKind::ClosePair => {
            let w = delta / 8;
            let edges = (1..size).flat_map(|leaf| [(0, leaf, w), (leaf, 0, w)]).collect();
            build(size, edges)
        }
        GadgetKind::FarPair => {
            let (t, s) = (0, 1);
            let w = delta / 16;
            let core: Vec<usize> = (2..size).collect();
            let mut edges = Vec::new();
            for (k, &c) in core.iter().enumerate() {
                edges.push((t, c, w));
                edges.push((c, s, w));
                edges.push((c, core[(k + 1) % core.len()], w));
            }
            edges.push((s, t, delta / 4 + 1));
            build(size, edges)
        }
    }
}
