//! Monte Carlo estimation of per-edge cut probabilities.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::decompose::{decompose, DecomposeConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct StatsConfig {
    pub trials: usize,
    pub base_seed: u64,
    /// Worker threads; 0 uses the global rayon pool.
    pub jobs: usize,
    /// Constant in the reported envelope `kappa * lg m * lg lg(m * delta)`.
    pub kappa: f64,
    pub decompose: DecomposeConfig,
}

impl Default for StatsConfig {
    fn default() -> Self {
        StatsConfig { trials: 1000, base_seed: 0, jobs: 0, kappa: 1.0, decompose: DecomposeConfig::quiet() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeStat {
    pub edge_id: usize,
    pub tail: usize,
    pub head: usize,
    pub weight: u64,
    pub cuts: u64,
    pub p_hat: f64,
    /// `p_hat * delta / weight`, 0 for zero-weight edges.
    pub rho: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatsSummary {
    /// `max_e rho(e)`.
    pub l_hat: f64,
    pub kappa: f64,
    pub kappa_bound: f64,
    pub trials: usize,
    pub delta: u64,
    pub n: usize,
    pub m: usize,
    pub min_deleted: usize,
    pub mean_deleted: f64,
    pub max_depth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutStats {
    pub edges: Vec<EdgeStat>,
    pub summary: StatsSummary,
}

impl CutStats {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("edge_id,tail,head,weight,p_hat,rho,ci_low,ci_high\n");
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                e.edge_id, e.tail, e.head, e.weight, e.p_hat, e.rho, e.ci_low, e.ci_high
            );
        }
        out
    }
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes >= trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Default)]
struct Tally {
    cuts: Vec<u64>,
    min_deleted: usize,
    total_deleted: usize,
    max_depth: usize,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        if self.cuts.is_empty() {
            return other;
        }
        if other.cuts.is_empty() {
            return self;
        }
        for (a, b) in self.cuts.iter_mut().zip(other.cuts) {
            *a += b;
        }
        self.min_deleted = self.min_deleted.min(other.min_deleted);
        self.total_deleted += other.total_deleted;
        self.max_depth = self.max_depth.max(other.max_depth);
        self
    }
}

/// Runs `trials` decompositions with seeds `base_seed..base_seed + trials` and
/// tallies how often each edge is deleted.
pub fn estimate_cut_probs(g: &Graph, delta: u64, config: &StatsConfig) -> Result<CutStats> {
    if config.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let run = || -> Result<Tally> {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|t| {
                let res = decompose(g, delta, config.base_seed.wrapping_add(t), &config.decompose)?;
                let mut cuts = vec![0u64; g.m()];
                for &id in &res.deleted {
                    cuts[id] += 1;
                }
                Ok(Tally {
                    cuts,
                    min_deleted: res.deleted.len(),
                    total_deleted: res.deleted.len(),
                    max_depth: res.max_depth,
                })
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    };
    let tally = if config.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run)?
    } else {
        run()?
    };
    let mut cuts = tally.cuts;
    cuts.resize(g.m(), 0);

    let trials = config.trials as u64;
    let edges: Vec<EdgeStat> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let p_hat = cuts[id] as f64 / trials as f64;
            let rho = if e.weight == 0 { 0.0 } else { p_hat * delta as f64 / e.weight as f64 };
            let (ci_low, ci_high) = wilson_interval(cuts[id], trials);
            EdgeStat {
                edge_id: id,
                tail: e.tail as usize,
                head: e.head as usize,
                weight: e.weight,
                cuts: cuts[id],
                p_hat,
                rho,
                ci_low,
                ci_high,
            }
        })
        .collect();
    let l_hat = edges.iter().map(|e| e.rho).fold(0.0, f64::max);
    let m = g.m().max(2) as f64;
    let kappa_bound = config.kappa * m.log2() * (m * delta as f64).log2().log2().max(1.0);
    Ok(CutStats {
        summary: StatsSummary {
            l_hat,
            kappa: config.kappa,
            kappa_bound,
            trials: config.trials,
            delta,
            n: g.n(),
            m: g.m(),
            min_deleted: if g.m() == 0 { 0 } else { tally.min_deleted },
            mean_deleted: tally.total_deleted as f64 / trials as f64,
            max_depth: tally.max_depth,
        },
        edges,
    })
}
