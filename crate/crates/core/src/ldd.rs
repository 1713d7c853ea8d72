//! Iterated random-order ball cutting on a working set of light vertices.
//!
//! Each iteration samples centers with probability growing doubly
//! exponentially in the iteration index, draws one radius shared by all
//! centers, and cuts an out-ball then an in-ball around every center in a
//! uniformly random order. Every nonempty claimed region becomes a recursive
//! subinstance.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, VertexSet};
use crate::rng::{phase_rng, Phase, Rng};
use crate::sssp::{grow_balls_ordered_with, Radius, Searcher, RADIUS_SCALE};

/// Radius schedule `a_0 > a_1 > ... > a_L >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub levels: u32,
    pub radii: Vec<Radius>,
    pub delta: u64,
}

impl Schedule {
    /// Radius range `[a_i, a_{i-1})` of iteration `i` (1-based).
    pub fn range(&self, i: u32) -> (Radius, Radius) {
        (self.radii[i as usize], self.radii[i as usize - 1])
    }
}

/// `max(1, ceil(lg lg m))`.
pub fn iteration_count(m: usize) -> u32 {
    fn ceil_log2(x: u64) -> u32 {
        if x <= 1 {
            0
        } else {
            64 - (x - 1).leading_zeros()
        }
    }
    ceil_log2(ceil_log2(m as u64) as u64).max(1)
}

pub fn schedule(m: usize, delta: u64) -> Result<Schedule> {
    check_delta(delta)?;
    let levels = iteration_count(m);
    let scaled = delta as u128 * RADIUS_SCALE as u128;
    if scaled / 8 < levels as u128 {
        return Err(Error::Config(format!("delta {delta} too small for {levels} iterations")));
    }
    let mut radii = vec![Radius::from_ratio(delta, 8)];
    for i in 1..=levels {
        let width = 16 * (levels as u128).min(1u128 << i.min(64));
        let step = ((scaled / width) as u64).max(1);
        let prev = radii[i as usize - 1].units();
        radii.push(Radius::from_units(prev.saturating_sub(step)));
    }
    Ok(Schedule { levels, radii, delta })
}

pub(crate) fn check_delta(delta: u64) -> Result<()> {
    if delta == 0 {
        return Err(Error::Config("delta must be at least 1".into()));
    }
    if delta >= 1 << 46 {
        return Err(Error::Config(format!("delta {delta} too large for the radius grid")));
    }
    Ok(())
}

/// Inclusion probability `min{1, 4 * 2^(2^i) * ln(m * delta) * deg / (2m)}`.
///
/// `ln(m * delta)` is floored at `ln 2` so the last iteration samples every
/// vertex of positive degree even when `m * delta = 1`.
pub fn sample_probability(i: u32, deg: usize, m: usize, delta: u64) -> f64 {
    scaled_sample_probability(4.0 * 2f64.powi(1 << i), deg, m, delta)
}

pub(crate) fn scaled_sample_probability(factor: f64, deg: usize, m: usize, delta: u64) -> f64 {
    if deg == 0 || m == 0 {
        return 0.0;
    }
    let log = ((m as f64) * (delta as f64)).max(2.0).ln();
    (factor * log * deg as f64 / (2.0 * m as f64)).min(1.0)
}

/// Bernoulli sample of `u`, one draw per member in ascending id order.
pub fn sample_with(g: &Graph, u: &VertexSet, rng: &mut Rng, prob: impl Fn(usize) -> f64) -> Vec<usize> {
    u.iter()
        .filter(|&v| {
            let p = prob(g.degree(v));
            let draw: f64 = rng.random();
            draw < p
        })
        .collect()
}

pub fn sample_set(g: &Graph, u: &VertexSet, i: u32, delta: u64, rng: &mut Rng) -> Vec<usize> {
    let m = g.m();
    sample_with(g, u, rng, |deg| sample_probability(i, deg, m, delta))
}

/// Uniform draw on the radius grid over `[lo, hi)`.
pub fn draw_radius(rng: &mut Rng, lo: Radius, hi: Radius) -> Radius {
    assert!(lo < hi, "empty radius range");
    Radius::from_units(rng.random_range(lo.units()..hi.units()))
}

/// One cut ball: the region it claimed from the working set and the edges it deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutEvent {
    /// `None` for a ball grown from a contracted set of sources.
    pub center: Option<usize>,
    pub direction: Direction,
    pub radius: Radius,
    pub claimed: Vec<usize>,
    pub deleted: Vec<usize>,
    pub iteration: u32,
}

/// Edges separating a claimed region from the rest of the working set.
///
/// For an out-ball these are the edges leaving `claimed` into `remaining`,
/// for an in-ball the edges entering `claimed` from `remaining`.
pub fn cut_edges(g: &Graph, claimed: &[usize], remaining: &VertexSet, dir: Direction) -> Vec<usize> {
    let mut deleted = Vec::new();
    for &x in claimed {
        let ids = match dir {
            Direction::Out => g.out_edge_ids(x),
            Direction::In => g.in_edge_ids(x),
        };
        for &id in ids {
            let e = g.edge(id as usize);
            let other = match dir {
                Direction::Out => e.head,
                Direction::In => e.tail,
            };
            if remaining.contains(other as usize) {
                deleted.push(id as usize);
            }
        }
    }
    deleted.sort_unstable();
    deleted
}

/// Cuts balls of radius `r` around `centers` (in order, each in every
/// direction of `dirs`) out of `u`, returning one event per nonempty claim.
pub fn cut_round(
    g: &Graph,
    u: &mut VertexSet,
    centers: &[usize],
    dirs: &[Direction],
    r: Radius,
    iteration: u32,
    speedup: bool,
) -> Vec<CutEvent> {
    let order: Vec<(usize, Direction)> = centers.iter().flat_map(|&c| dirs.iter().map(move |&d| (c, d))).collect();
    let mut events = Vec::new();
    grow_balls_ordered_with(g, u, &order, r, speedup, |center, direction, claimed, remaining| {
        if !claimed.is_empty() {
            events.push(CutEvent {
                center: Some(center),
                direction,
                radius: r,
                claimed: claimed.to_vec(),
                deleted: cut_edges(g, claimed, remaining, direction),
                iteration,
            });
        }
    });
    events
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationStats {
    pub iteration: u32,
    pub sampled: usize,
    pub radius: Radius,
    pub cuts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma2_violations: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default)]
pub struct IterationOutcome {
    pub events: Vec<CutEvent>,
    /// Degree-0 vertices of the working set, finished as singleton components.
    pub singletons: Vec<usize>,
    pub stats: Vec<IterationStats>,
}

#[derive(Clone, Copy, Debug)]
pub struct IterationConfig {
    pub speedup: bool,
    pub monitor: bool,
}

/// Runs all iterations on the working set `u` (emptied on return).
///
/// Every vertex of `u` is expected to be out-light and in-light in `g`.
pub fn run_iterations(
    g: &Graph,
    u: &mut VertexSet,
    delta: u64,
    instance_seed: u64,
    config: IterationConfig,
) -> Result<IterationOutcome> {
    let mut outcome = IterationOutcome::default();
    let isolated: Vec<usize> = u.iter().filter(|&v| g.degree(v) == 0).collect();
    for &v in &isolated {
        u.remove(v);
    }
    outcome.singletons = isolated;
    if u.is_empty() {
        return Ok(outcome);
    }
    let sched = schedule(g.m(), delta)?;
    for i in 1..=sched.levels {
        let (lo, hi) = sched.range(i);
        let violations = (config.monitor && i > 1).then(|| lemma2_monitor(g, u, i, hi));
        let mut rng = phase_rng(instance_seed, Phase::Iteration(i));
        let mut sample = sample_set(g, u, i, delta, &mut rng);
        let r = draw_radius(&mut rng, lo, hi);
        sample.shuffle(&mut rng);
        let events = cut_round(g, u, &sample, &[Direction::Out, Direction::In], r, i, config.speedup);
        outcome.stats.push(IterationStats {
            iteration: i,
            sampled: sample.len(),
            radius: r,
            cuts: events.len(),
            lemma2_violations: violations,
        });
        outcome.events.extend(events);
        if u.is_empty() {
            break;
        }
    }
    assert!(u.is_empty(), "working set not exhausted after the last iteration: {u:?}");
    Ok(outcome)
}

/// Vertices of `u` whose out- or in-ball of radius `a_prev`, intersected
/// with `u`, has volume above `2m / 2^(2^(i-1))`.
pub fn lemma2_monitor(g: &Graph, u: &VertexSet, i: u32, a_prev: Radius) -> Vec<usize> {
    assert!(i > 1);
    let two_m = 2 * g.m() as u128;
    let shift = 1u32 << (i - 1);
    let exceeds = |vol: usize| shift >= 64 || (vol as u128) << shift > two_m;
    let limit = a_prev.dist_limit();
    let mut searcher = Searcher::new(g.n());
    let mut bad = Vec::new();
    for v in u.iter() {
        let heavy = [Direction::Out, Direction::In].into_iter().any(|dir| {
            let mut vol = 0usize;
            searcher.run(g, [(v, 0, 0)], dir, limit, |x, _, _| {
                if u.contains(x) {
                    vol += g.degree(x);
                }
                true
            });
            exceeds(vol)
        });
        if heavy {
            bad.push(v);
        }
    }
    bad
}
