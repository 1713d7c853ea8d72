//! Bounded Dijkstra searches: single and multi-source balls, and sequential
//! random-order ball growing with the skip rule for already-claimed regions.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::graph::{Direction, Graph, VertexSet};

/// Fixed-point units per unit of edge weight.
pub const RADIUS_SCALE: u64 = 1 << 16;

/// Non-negative fixed-point ball radius (`RADIUS_SCALE` units per weight unit).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Radius(u64);

impl Radius {
    pub const ZERO: Radius = Radius(0);

    pub const fn from_units(units: u64) -> Self {
        Radius(units)
    }

    pub fn from_weight(w: u64) -> Self {
        Radius(w.checked_mul(RADIUS_SCALE).expect("radius overflow"))
    }

    /// `num / den` weight units, rounded down to the grid.
    pub fn from_ratio(num: u64, den: u64) -> Self {
        Radius(((num as u128 * RADIUS_SCALE as u128) / den as u128) as u64)
    }

    pub fn units(self) -> u64 {
        self.0
    }

    /// Largest integer distance inside a ball of this radius.
    pub fn dist_limit(self) -> u64 {
        self.0 / RADIUS_SCALE
    }

    /// `dist * RADIUS_SCALE <= self`.
    pub fn covers(self, dist: u64) -> bool {
        dist <= self.dist_limit()
    }

    pub fn as_weight(self) -> f64 {
        self.0 as f64 / RADIUS_SCALE as f64
    }
}

/// Vertices of a ball together with their search distances.
#[derive(Clone, Debug)]
pub struct BallResult {
    pub members: VertexSet,
    /// `(vertex, distance)` for every member, ascending by vertex id.
    pub dist: Vec<(usize, u64)>,
}

impl BallResult {
    pub fn distance(&self, v: usize) -> Option<u64> {
        self.dist.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| self.dist[i].1)
    }
}

/// Reusable Dijkstra state; arrays are reset lazily through an epoch counter.
pub struct Searcher {
    dist: Vec<u64>,
    label: Vec<u32>,
    seen: Vec<u32>,
    done: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<Reverse<(u64, u32, u32)>>,
}

impl Searcher {
    pub fn new(n: usize) -> Self {
        Searcher {
            dist: vec![0; n],
            label: vec![0; n],
            seen: vec![0; n],
            done: vec![0; n],
            epoch: 0,
            heap: BinaryHeap::new(),
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.fill(0);
            self.done.fill(0);
            self.epoch = 1;
        }
        self.heap.clear();
    }

    /// Multi-source Dijkstra over `g` in direction `dir`, restricted to distances `<= limit`.
    ///
    /// Sources are `(vertex, offset, label)`; each settled vertex carries the
    /// lexicographically smallest `(distance, label)` over all sources. `visit`
    /// is called once per settled vertex with `(vertex, distance, label)` in
    /// settle order and returns whether the vertex's edges are relaxed.
    pub fn run(
        &mut self,
        g: &Graph,
        sources: impl IntoIterator<Item = (usize, u64, u32)>,
        dir: Direction,
        limit: u64,
        mut visit: impl FnMut(usize, u64, u32) -> bool,
    ) {
        self.next_epoch();
        let epoch = self.epoch;
        for (s, offset, label) in sources {
            if offset > limit {
                continue;
            }
            if self.seen[s] != epoch || (offset, label) < (self.dist[s], self.label[s]) {
                self.seen[s] = epoch;
                self.dist[s] = offset;
                self.label[s] = label;
                self.heap.push(Reverse((offset, label, s as u32)));
            }
        }
        while let Some(Reverse((d, label, v))) = self.heap.pop() {
            let v = v as usize;
            if self.done[v] == epoch || (d, label) != (self.dist[v], self.label[v]) {
                continue;
            }
            self.done[v] = epoch;
            if !visit(v, d, label) {
                continue;
            }
            for (x, w) in g.neighbors(v, dir) {
                let nd = d + w;
                if nd > limit || self.done[x] == epoch {
                    continue;
                }
                if self.seen[x] != epoch || (nd, label) < (self.dist[x], self.label[x]) {
                    self.seen[x] = epoch;
                    self.dist[x] = nd;
                    self.label[x] = label;
                    self.heap.push(Reverse((nd, label, x as u32)));
                }
            }
        }
    }

    /// Settled `(vertex, distance)` pairs of a plain bounded search from `sources`.
    pub fn bounded(&mut self, g: &Graph, sources: &[(usize, u64)], dir: Direction, limit: u64) -> Vec<(usize, u64)> {
        let mut out = Vec::new();
        self.run(g, sources.iter().map(|&(s, o)| (s, o, 0)), dir, limit, |v, d, _| {
            out.push((v, d));
            true
        });
        out
    }
}

/// Multi-source ball `{v : min_s offset_s + d(s, v) <= r}` (distances reversed for `In`).
///
/// Distances are computed in all of `g`; `restrict` only filters the members.
pub fn ball(
    g: &Graph,
    sources: &[(usize, u64)],
    dir: Direction,
    r: Radius,
    restrict: Option<&VertexSet>,
) -> BallResult {
    let mut searcher = Searcher::new(g.n());
    let mut dist: Vec<(usize, u64)> = searcher
        .bounded(g, sources, dir, r.dist_limit())
        .into_iter()
        .filter(|&(v, _)| restrict.is_none_or(|u| u.contains(v)))
        .collect();
    dist.sort_unstable();
    let members = VertexSet::from_iter(g.n(), dist.iter().map(|&(v, _)| v));
    BallResult { members, dist }
}

/// Grows balls of radius `r` from `centers` in the given order, each claiming
/// what is still in `u` and removing it from `u`.
///
/// `on_claim(center, dir, claimed, u_after)` is called after every ball with
/// the sorted claimed vertices and the working set after their removal. With
/// `speedup`, a search stops expanding a vertex that an earlier center of the
/// same direction already reached at a distance no larger; the claimed sets
/// are the same either way.
pub fn grow_balls_ordered_with(
    g: &Graph,
    u: &mut VertexSet,
    centers: &[(usize, Direction)],
    r: Radius,
    speedup: bool,
    mut on_claim: impl FnMut(usize, Direction, &[usize], &VertexSet),
) {
    let limit = r.dist_limit();
    let mut searcher = Searcher::new(g.n());
    let mut best = if speedup { Some(SettleRecord::new(g.n())) } else { None };
    let mut claimed = Vec::new();
    let mut settled = Vec::new();
    for &(c, dir) in centers {
        claimed.clear();
        settled.clear();
        let record = best.as_ref().map(|b| b.side(dir));
        searcher.run(g, [(c, 0, 0)], dir, limit, |v, d, _| {
            if let Some(rec) = record {
                if rec.get(v).is_some_and(|prev| prev <= d) {
                    debug_assert!(!u.contains(v));
                    return false;
                }
                settled.push((v, d));
            }
            if u.contains(v) {
                claimed.push(v);
            }
            true
        });
        if let Some(b) = best.as_mut() {
            let side = b.side_mut(dir);
            for &(v, d) in &settled {
                side.lower(v, d);
            }
        }
        for &v in &claimed {
            u.remove(v);
        }
        claimed.sort_unstable();
        on_claim(c, dir, &claimed, u);
    }
}

/// Convenience form of [`grow_balls_ordered_with`] returning every claim.
pub fn grow_balls_ordered(
    g: &Graph,
    u: &mut VertexSet,
    centers: &[(usize, Direction)],
    r: Radius,
    speedup: bool,
) -> Vec<(usize, Direction, Vec<usize>)> {
    let mut out = Vec::with_capacity(centers.len());
    grow_balls_ordered_with(g, u, centers, r, speedup, |c, dir, claimed, _| out.push((c, dir, claimed.to_vec())));
    out
}

/// Per-direction minimum settle distance seen from earlier centers.
struct SettleRecord {
    out: DistRecord,
    inward: DistRecord,
}

impl SettleRecord {
    fn new(n: usize) -> Self {
        SettleRecord { out: DistRecord(vec![u64::MAX; n]), inward: DistRecord(vec![u64::MAX; n]) }
    }

    fn side(&self, dir: Direction) -> &DistRecord {
        match dir {
            Direction::Out => &self.out,
            Direction::In => &self.inward,
        }
    }

    fn side_mut(&mut self, dir: Direction) -> &mut DistRecord {
        match dir {
            Direction::Out => &mut self.out,
            Direction::In => &mut self.inward,
        }
    }
}

struct DistRecord(Vec<u64>);

impl DistRecord {
    fn get(&self, v: usize) -> Option<u64> {
        Some(self.0[v]).filter(|&d| d != u64::MAX)
    }

    fn lower(&mut self, v: usize, d: u64) {
        self.0[v] = self.0[v].min(d);
    }
}
