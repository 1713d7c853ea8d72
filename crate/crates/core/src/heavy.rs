//! Heavy-vertex elimination.
//!
//! A vertex is out-heavy when its out-ball of radius `delta/8` induces a large
//! share of the edges (in-heavy symmetrically). Labels are estimated from a
//! sample of edges. If some in-heavy `s` reaches some out-heavy `t` within
//! `delta/4`, the intersection of an in-ball around `s` and an out-ball around
//! `t` is finished outright (case 1). Otherwise a ball around all in-heavy
//! vertices separates the two heavy classes and a round of one-directional
//! cuts clears the remaining heavy vertices from the larger side (case 2).

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::graph::{Direction, Graph, VertexSet};
use crate::ldd::{cut_edges, cut_round, draw_radius, sample_with, scaled_sample_probability, CutEvent};
use crate::rng::{phase_rng, Phase, Rng};
use crate::sssp::{ball, Radius, Searcher};

/// Number of sampled edges used by [`classify`] by default: `ceil(128 ln(n + 2))`.
pub fn default_sample_count(n: usize) -> usize {
    (128.0 * ((n + 2) as f64).ln()).ceil() as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyLabels {
    pub out_heavy: Vec<bool>,
    pub in_heavy: Vec<bool>,
    pub samples: usize,
}

impl HeavyLabels {
    pub fn all_light(n: usize) -> Self {
        HeavyLabels { out_heavy: vec![false; n], in_heavy: vec![false; n], samples: 0 }
    }

    pub fn out_heavy_vertices(&self) -> Vec<usize> {
        (0..self.out_heavy.len()).filter(|&v| self.out_heavy[v]).collect()
    }

    pub fn in_heavy_vertices(&self) -> Vec<usize> {
        (0..self.in_heavy.len()).filter(|&v| self.in_heavy[v]).collect()
    }
}

pub fn classify(g: &Graph, delta: u64, rng: &mut Rng) -> HeavyLabels {
    classify_with_samples(g, delta, default_sample_count(g.n()), rng)
}

/// Labels every vertex by the fraction of `samples` uniformly drawn edges
/// whose endpoints both lie in its `delta/8` ball; a fraction of at least 5/8
/// means heavy.
pub fn classify_with_samples(g: &Graph, delta: u64, samples: usize, rng: &mut Rng) -> HeavyLabels {
    let n = g.n();
    if g.m() == 0 || samples == 0 {
        return HeavyLabels::all_light(n);
    }
    let limit = Radius::from_ratio(delta, 8).dist_limit();
    let picks: Vec<usize> = (0..samples).map(|_| rng.random_range(0..g.m())).collect();

    let mut searcher = Searcher::new(n);
    let mut mark = vec![usize::MAX; n];
    let mut out_hits = vec![0u32; n];
    let mut in_hits = vec![0u32; n];
    for (k, &id) in picks.iter().enumerate() {
        let e = g.edge(id);
        // v is counted for out-labels when both endpoints are within reach of v,
        // i.e. v lies in the in-balls of both endpoints; symmetric for in-labels.
        for (hits, dir, tag) in [(&mut out_hits, Direction::In, 2 * k), (&mut in_hits, Direction::Out, 2 * k + 1)] {
            searcher.run(g, [(e.tail as usize, 0, 0)], dir, limit, |v, _, _| {
                mark[v] = tag;
                true
            });
            searcher.run(g, [(e.head as usize, 0, 0)], dir, limit, |v, _, _| {
                if mark[v] == tag {
                    hits[v] += 1;
                }
                true
            });
        }
    }
    let heavy = |h: u32| 8 * h as usize >= 5 * samples;
    HeavyLabels {
        out_heavy: out_hits.into_iter().map(heavy).collect(),
        in_heavy: in_hits.into_iter().map(heavy).collect(),
        samples,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosePair {
    /// In-heavy endpoint.
    pub s: usize,
    /// Out-heavy endpoint.
    pub t: usize,
    pub dist: u64,
}

/// Closest (in-heavy, out-heavy) pair with `d(s, t) <= delta/4`, if any.
///
/// Minimizes the distance, then the id of `t`, then the id of `s`.
pub fn find_close_pair(g: &Graph, labels: &HeavyLabels, delta: u64) -> Option<ClosePair> {
    let sources = labels.in_heavy_vertices();
    if sources.is_empty() || !labels.out_heavy.iter().any(|&h| h) {
        return None;
    }
    let limit = delta / 4;
    let mut best: Option<ClosePair> = None;
    Searcher::new(g.n()).run(g, sources.iter().map(|&s| (s, 0, s as u32)), Direction::Out, limit, |v, d, s| {
        if labels.out_heavy[v] && best.is_none_or(|b| (d, v) < (b.dist, b.t)) {
            best = Some(ClosePair { s: s as usize, t: v, dist: d });
        }
        true
    });
    best
}

#[derive(Clone, Debug)]
pub struct Case1Outcome {
    pub radius: Radius,
    pub events: Vec<CutEvent>,
    /// `V \ B-(s, r)` and `B-(s, r) \ B+(t, r)`.
    pub subinstances: [Vec<usize>; 2],
    /// `B-(s, r) ∩ B+(t, r)`, which has weak diameter at most `delta`.
    pub component: Vec<usize>,
}

/// Cuts an in-ball around `s`, then an out-ball around `t` inside it.
pub fn case1(g: &Graph, pair: ClosePair, delta: u64, rng: &mut Rng) -> Case1Outcome {
    let n = g.n();
    let r = draw_radius(rng, Radius::from_ratio(delta, 8), Radius::from_ratio(delta, 4));

    let in_ball = ball(g, &[(pair.s, 0)], Direction::In, r, None).members;
    let outside = VertexSet::from_iter(n, (0..n).filter(|&v| !in_ball.contains(v)));
    let in_list = in_ball.to_vec();
    let first = CutEvent {
        center: Some(pair.s),
        direction: Direction::In,
        radius: r,
        deleted: cut_edges(g, &in_list, &outside, Direction::In),
        claimed: in_list,
        iteration: 0,
    };

    let core = ball(g, &[(pair.t, 0)], Direction::Out, r, Some(&in_ball)).members;
    let rest = VertexSet::from_iter(n, in_ball.iter().filter(|&v| !core.contains(v)));
    let component = core.to_vec();
    let second = CutEvent {
        center: Some(pair.t),
        direction: Direction::Out,
        radius: r,
        deleted: cut_edges(g, &component, &rest, Direction::Out),
        claimed: component.clone(),
        iteration: 0,
    };
    Case1Outcome { radius: r, events: vec![first, second], subinstances: [outside.to_vec(), rest.to_vec()], component }
}

#[derive(Clone, Debug)]
pub struct Case2Outcome {
    pub radius: Radius,
    /// Size of the ball grown from all in-heavy vertices.
    pub ball_size: usize,
    /// Direction of the elimination cuts: `In` when the ball side was recursed on.
    pub elimination_direction: Direction,
    pub events: Vec<CutEvent>,
    /// The side of the separating cut with fewer edges.
    pub small_side: Vec<usize>,
    pub elimination_sampled: usize,
    pub elimination_radius: Radius,
    /// Claims of the elimination round; each becomes a subinstance.
    pub elimination: Vec<CutEvent>,
    /// Surviving working set, handed to the iterated cutting.
    pub working: VertexSet,
}

/// Separates in-heavy from out-heavy vertices and clears the larger side of
/// the remaining heavy class with one round of one-directional cuts.
pub fn case2(g: &Graph, labels: &HeavyLabels, delta: u64, instance_seed: u64, speedup: bool) -> Case2Outcome {
    let n = g.n();
    let m = g.m();
    let (lo, hi) = (Radius::from_ratio(delta, 8), Radius::from_ratio(delta, 4));
    let mut rng = phase_rng(instance_seed, Phase::CaseRadius);
    let r = draw_radius(&mut rng, lo, hi);

    let sources: Vec<(usize, u64)> = labels.in_heavy_vertices().into_iter().map(|s| (s, 0)).collect();
    let heavy_ball =
        if sources.is_empty() { VertexSet::new(n) } else { ball(g, &sources, Direction::Out, r, None).members };
    let complement = VertexSet::from_iter(n, (0..n).filter(|&v| !heavy_ball.contains(v)));
    let ball_size = heavy_ball.len();
    let ball_list = heavy_ball.to_vec();
    let mut events = Vec::new();
    let deleted = cut_edges(g, &ball_list, &complement, Direction::Out);
    if !ball_list.is_empty() {
        events.push(CutEvent {
            center: None,
            direction: Direction::Out,
            radius: r,
            claimed: ball_list.clone(),
            deleted,
            iteration: 0,
        });
    }

    let (small_side, mut working, dir) = if g.induced_edge_count(&heavy_ball) <= g.induced_edge_count(&complement) {
        (ball_list, complement, Direction::In)
    } else {
        (complement.to_vec(), heavy_ball, Direction::Out)
    };

    let mut rng = phase_rng(instance_seed, Phase::Elimination);
    let mut sample = sample_with(g, &working, &mut rng, |deg| scaled_sample_probability(16.0, deg, m, delta));
    let r1 = draw_radius(&mut rng, lo, hi);
    sample.shuffle(&mut rng);
    let elimination = cut_round(g, &mut working, &sample, &[dir], r1, 0, speedup);

    Case2Outcome {
        radius: r,
        ball_size,
        elimination_direction: dir,
        events,
        small_side,
        elimination_sampled: sample.len(),
        elimination_radius: r1,
        elimination,
        working,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{self, GadgetKind};
    use crate::rng::phase_rng;
    use crate::verify::{ball_edge_count, weak_diameter, Diameter};

    fn rng(seed: u64) -> Rng {
        phase_rng(seed, Phase::Classify)
    }

    /// Labels that every correct classifier must assign, from exact ball-edge counts.
    fn assert_contract(g: &Graph, delta: u64, labels: &HeavyLabels) {
        let m = g.m();
        let r = Radius::from_ratio(delta, 8);
        for v in 0..g.n() {
            for (dir, heavy) in [(Direction::Out, labels.out_heavy[v]), (Direction::In, labels.in_heavy[v])] {
                let count = ball_edge_count(g, v, dir, r);
                if 4 * count > 3 * m {
                    assert!(heavy, "{v} {dir:?} count {count} of {m} labeled light");
                }
                if 2 * count < m {
                    assert!(!heavy, "{v} {dir:?} count {count} of {m} labeled heavy");
                }
            }
        }
    }

    #[test]
    fn classify_path() {
        let g = Graph::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        for seed in 0..20 {
            let labels = classify(&g, 16, &mut rng(seed));
            assert!(labels.out_heavy[0]);
            assert!(!labels.out_heavy[2]);
            assert_contract(&g, 16, &labels);
        }
    }

    #[test]
    fn classify_bidirected_pair() {
        let g = Graph::new(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        let labels = classify(&g, 8, &mut rng(1));
        assert_eq!(labels.out_heavy, vec![true, true]);
        assert_eq!(labels.in_heavy, vec![true, true]);
        assert_eq!(labels.samples, default_sample_count(2));
    }

    #[test]
    fn classify_edgeless_is_light() {
        let g = Graph::new(4, &[]).unwrap();
        assert_eq!(classify(&g, 8, &mut rng(0)), HeavyLabels::all_light(4));
    }

    #[test]
    fn classify_random_graphs_respects_contract() {
        for seed in 0..10 {
            let g = gen::random_digraph(40, 120, 6, seed);
            for delta in [8, 40, 120] {
                assert_contract(&g, delta, &classify(&g, delta, &mut rng(seed)));
            }
        }
    }

    #[test]
    fn close_pair_examples() {
        let g = Graph::new(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        let labels = classify(&g, 8, &mut rng(0));
        assert_eq!(find_close_pair(&g, &labels, 8), Some(ClosePair { s: 0, t: 0, dist: 0 }));

        let mut only_in = HeavyLabels::all_light(2);
        only_in.in_heavy[0] = true;
        assert_eq!(find_close_pair(&g, &only_in, 8), None);

        // s = 0 reaches t = 2 only through weight 3 > 8/4.
        let g = Graph::new(3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
        let mut labels = HeavyLabels::all_light(3);
        labels.in_heavy[0] = true;
        labels.out_heavy[2] = true;
        assert_eq!(find_close_pair(&g, &labels, 8), None);
        assert_eq!(find_close_pair(&g, &labels, 12), Some(ClosePair { s: 0, t: 2, dist: 3 }));
    }

    #[test]
    fn case1_bidirected_pair() {
        let g = Graph::new(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        for seed in 0..10 {
            let out = case1(&g, ClosePair { s: 0, t: 0, dist: 0 }, 8, &mut rng(seed));
            assert!(out.radius >= Radius::from_weight(1) && out.radius < Radius::from_weight(2));
            assert_eq!(out.component, vec![0, 1]);
            assert!(out.events.iter().all(|e| e.deleted.is_empty()));
            assert!(out.subinstances.iter().all(|s| s.is_empty()));
        }
    }

    #[test]
    fn case1_component_diameter_and_sizes() {
        let g = gen::heavy_gadget(GadgetKind::ClosePair, 12, 32);
        for seed in 0..20 {
            let labels = classify(&g, 32, &mut rng(seed));
            let pair = find_close_pair(&g, &labels, 32).expect("close pair");
            let out = case1(&g, pair, 32, &mut rng(seed + 100));
            let comp = VertexSet::from_iter(g.n(), out.component.iter().copied());
            assert!(matches!(weak_diameter(&g, &comp), Diameter::Finite(d) if d <= 32));
            for side in &out.subinstances {
                let s = VertexSet::from_iter(g.n(), side.iter().copied());
                assert!(2 * g.induced_edge_count(&s) <= g.m());
            }
        }
    }

    #[test]
    fn case2_on_far_pair_gadget() {
        let g = gen::heavy_gadget(GadgetKind::FarPair, 16, 16);
        for seed in 0..20 {
            let labels = classify(&g, 16, &mut rng(seed));
            assert_contract(&g, 16, &labels);
            assert!(find_close_pair(&g, &labels, 16).is_none());
            let out = case2(&g, &labels, 16, seed, true);
            let heavy_ball: Vec<usize> = out.events[0].claimed.clone();
            for s in labels.in_heavy_vertices() {
                assert!(heavy_ball.contains(&s));
            }
            for t in labels.out_heavy_vertices() {
                assert!(!heavy_ball.contains(&t));
                assert!(!out.working.contains(t), "out-heavy {t} survived elimination");
            }
            let small = VertexSet::from_iter(g.n(), out.small_side.iter().copied());
            assert!(2 * g.induced_edge_count(&small) <= g.m());
            for e in &out.elimination {
                let s = VertexSet::from_iter(g.n(), e.claimed.iter().copied());
                assert!(2 * g.induced_edge_count(&s) <= g.m());
            }
        }
    }

    #[test]
    fn case2_without_heavy_vertices() {
        let g = gen::cycle(32, 1);
        let labels = HeavyLabels::all_light(32);
        let out = case2(&g, &labels, 8, 3, true);
        assert_eq!(out.ball_size, 0);
        assert!(out.events.is_empty());
        assert!(out.small_side.is_empty());
        assert_eq!(out.elimination_direction, Direction::In);
        let claimed: usize = out.elimination.iter().map(|e| e.claimed.len()).sum();
        assert_eq!(claimed + out.working.len(), 32);
    }
}
