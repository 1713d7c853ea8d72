//! Doubling experiment for running-time scaling.

use std::time::Instant;

use serde::Serialize;

use crate::decompose::{decompose, DecomposeConfig, LddResult};
use crate::error::Result;
use crate::gen;
use crate::graph::Graph;

/// Runs shorter than this are flagged as too noisy for a meaningful ratio.
pub const NOISE_FLOOR_SECS: f64 = 0.05;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Edge counts to run, usually successive doublings.
    pub sizes: Vec<usize>,
    /// `n = m / edges_per_vertex`.
    pub edges_per_vertex: usize,
    pub delta: u64,
    pub w_max: u64,
    pub seed: u64,
    pub speedup: bool,
    /// Repetitions per size; the fastest is reported.
    pub repeats: usize,
    /// Also time each size with the speedup toggled and compare the outputs.
    pub compare_speedup: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![1 << 14, 1 << 15, 1 << 16],
            edges_per_vertex: 8,
            delta: 1_000_000,
            w_max: 1 << 20,
            seed: 1,
            speedup: true,
            repeats: 1,
            compare_speedup: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub seconds: f64,
    /// `seconds / previous seconds`.
    pub ratio: Option<f64>,
    pub noisy: bool,
    pub deleted: usize,
    pub max_depth: usize,
    /// Time with the speedup toggled, when comparing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub toggled_seconds: Option<f64>,
    /// Whether the toggled run produced the same result.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identical: Option<bool>,
}

fn best_of(g: &Graph, config: &BenchConfig, speedup: bool) -> Result<(f64, LddResult)> {
    let dcfg = DecomposeConfig { speedup, ..DecomposeConfig::quiet() };
    let mut best = f64::INFINITY;
    let mut last = None;
    for _ in 0..config.repeats.max(1) {
        let start = Instant::now();
        let res = decompose(g, config.delta, config.seed, &dcfg)?;
        best = best.min(start.elapsed().as_secs_f64());
        last = Some(res);
    }
    Ok((best, last.expect("at least one repetition")))
}

pub fn doubling(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows: Vec<BenchRow> = Vec::new();
    for (k, &m) in config.sizes.iter().enumerate() {
        let n = (m / config.edges_per_vertex.max(1)).max(1);
        let g = gen::random_digraph(n, m, config.w_max, config.seed.wrapping_add(k as u64));
        let (best, res) = best_of(&g, config, config.speedup)?;
        let (toggled_seconds, identical) = if config.compare_speedup {
            let (t, other) = best_of(&g, config, !config.speedup)?;
            (Some(t), Some(other.deleted == res.deleted && other.components == res.components))
        } else {
            (None, None)
        };
        let prev = rows.last().map(|r| r.seconds);
        rows.push(BenchRow {
            n,
            m,
            seconds: best,
            ratio: prev.map(|p| best / p),
            noisy: best < NOISE_FLOOR_SECS || prev.is_some_and(|p| p < NOISE_FLOOR_SECS),
            deleted: res.deleted.len(),
            max_depth: res.max_depth,
            toggled_seconds,
            identical,
        });
    }
    Ok(rows)
}
