//! Exact checks for decompositions: strongly connected components, weak
//! diameters, ball edge counts, and whole-result validation.

mod stats;

pub use stats::{estimate_cut_probs, wilson_interval, CutStats, EdgeStat, StatsConfig, StatsSummary};

use std::fmt;

use serde::Serialize;

use crate::decompose::LddResult;
use crate::graph::{Direction, Graph, VertexSet};
use crate::sssp::{Radius, Searcher};

/// Strongly connected components of `g` without the edges in `deleted`.
///
/// Iterative Tarjan; each component is sorted and components are ordered by
/// their smallest vertex.
pub fn scc(g: &Graph, deleted: &[usize]) -> Vec<Vec<usize>> {
    let mut removed = vec![false; g.m()];
    for &id in deleted {
        if id < g.m() {
            removed[id] = true;
        }
    }
    scc_with_mask(g, &removed)
}

pub(crate) fn scc_with_mask(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    const UNSEEN: u32 = u32::MAX;
    let n = g.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next = 0u32;
    let mut comps = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let ids = g.out_edge_ids(v);
            if *pos < ids.len() {
                let id = ids[*pos] as usize;
                *pos += 1;
                if removed[id] {
                    continue;
                }
                let w = g.edge(id).head as usize;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Diameter {
    Finite(u64),
    Infinite,
}

/// `max d(u, v)` over ordered pairs of `s`, with distances taken in all of `g`.
pub fn weak_diameter(g: &Graph, s: &VertexSet) -> Diameter {
    let mut searcher = Searcher::new(g.n());
    let mut worst = 0u64;
    for u in s.iter() {
        let mut reached = 0usize;
        searcher.run(g, [(u, 0, 0)], Direction::Out, u64::MAX, |v, d, _| {
            if s.contains(v) {
                reached += 1;
                worst = worst.max(d);
            }
            true
        });
        if reached < s.len() {
            return Diameter::Infinite;
        }
    }
    Diameter::Finite(worst)
}

/// A pair `(u, v)` of a set with `d(u, v)` above the allowed bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: usize,
    pub v: usize,
    /// `None` when `v` is unreachable from `u`.
    pub dist: Option<u64>,
}

/// Returns a pair of `s` at distance more than `bound`, if one exists.
pub fn diameter_witness(g: &Graph, s: &[usize], bound: u64) -> Option<Witness> {
    if s.len() <= 1 {
        return None;
    }
    let mut searcher = Searcher::new(g.n());
    let mut mark = vec![usize::MAX; g.n()];
    for (k, &u) in s.iter().enumerate() {
        searcher.run(g, [(u, 0, 0)], Direction::Out, bound, |v, _, _| {
            mark[v] = k;
            true
        });
        if let Some(&v) = s.iter().find(|&&v| mark[v] != k) {
            let dist = searcher
                .bounded(g, &[(u, 0)], Direction::Out, u64::MAX)
                .into_iter()
                .find(|&(x, _)| x == v)
                .map(|(_, d)| d);
            return Some(Witness { u, v, dist });
        }
    }
    None
}

/// `|E[B(v, radius)]|`: edges with both endpoints in the ball around `v`.
pub fn ball_edge_count(g: &Graph, v: usize, dir: Direction, radius: Radius) -> usize {
    let members = VertexSet::from_iter(
        g.n(),
        Searcher::new(g.n()).bounded(g, &[(v, 0)], dir, radius.dist_limit()).into_iter().map(|(x, _)| x),
    );
    g.induced_edge_count(&members)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    InvalidEdgeId { edge: usize },
    DuplicateEdgeId { edge: usize },
    InvalidVertex { vertex: usize },
    VertexCoveredTwice { vertex: usize },
    VertexMissing { vertex: usize },
    SccSpansComponents { u: usize, v: usize },
    SccDiameter { witness: Witness },
    Case1Diameter { component: usize, witness: Witness },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dist = |w: &Witness| w.dist.map_or("unreachable".to_string(), |d| d.to_string());
        match self {
            Failure::InvalidEdgeId { edge } => write!(f, "deleted edge id {edge} does not exist"),
            Failure::DuplicateEdgeId { edge } => write!(f, "deleted edge id {edge} listed twice"),
            Failure::InvalidVertex { vertex } => write!(f, "component vertex {vertex} does not exist"),
            Failure::VertexCoveredTwice { vertex } => write!(f, "vertex {vertex} appears in two components"),
            Failure::VertexMissing { vertex } => write!(f, "vertex {vertex} is in no component"),
            Failure::SccSpansComponents { u, v } => {
                write!(f, "vertices {u} and {v} share a strongly connected component but not a component")
            }
            Failure::SccDiameter { witness: w } => {
                write!(f, "strongly connected component too wide: d({}, {}) = {}", w.u, w.v, dist(w))
            }
            Failure::Case1Diameter { component, witness: w } => {
                write!(f, "finished component {component} too wide: d({}, {}) = {}", w.u, w.v, dist(w))
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
    pub scc_count: usize,
    pub largest_scc: usize,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks a decomposition of `g`: valid deleted ids, components partition the
/// vertices, every remaining SCC lies in one component and has weak diameter
/// at most `delta`, and every case-1 component has weak diameter at most `delta`.
pub fn validate(g: &Graph, result: &LddResult) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut removed = vec![false; g.m()];
    for &id in &result.deleted {
        if id >= g.m() {
            report.failures.push(Failure::InvalidEdgeId { edge: id });
        } else if std::mem::replace(&mut removed[id], true) {
            report.failures.push(Failure::DuplicateEdgeId { edge: id });
        }
    }

    let mut owner = vec![usize::MAX; g.n()];
    for (c, comp) in result.components.iter().enumerate() {
        for &v in comp {
            if v >= g.n() {
                report.failures.push(Failure::InvalidVertex { vertex: v });
            } else if owner[v] != usize::MAX {
                report.failures.push(Failure::VertexCoveredTwice { vertex: v });
            } else {
                owner[v] = c;
            }
        }
    }
    for (v, &o) in owner.iter().enumerate() {
        if o == usize::MAX {
            report.failures.push(Failure::VertexMissing { vertex: v });
        }
    }

    let sccs = scc_with_mask(g, &removed);
    report.scc_count = sccs.len();
    report.largest_scc = sccs.iter().map(Vec::len).max().unwrap_or(0);
    for comp in &sccs {
        if let Some(&v) = comp.iter().find(|&&v| owner[v] != owner[comp[0]]) {
            report.failures.push(Failure::SccSpansComponents { u: comp[0], v });
        }
        if let Some(witness) = diameter_witness(g, comp, result.delta) {
            report.failures.push(Failure::SccDiameter { witness });
        }
    }
    for &c in &result.case1_components {
        if let Some(comp) = result.components.get(c) {
            if let Some(witness) = diameter_witness(g, comp, result.delta) {
                report.failures.push(Failure::Case1Diameter { component: c, witness });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use proptest::prelude::*;

    /// SCCs from pairwise reachability, O(n * m).
    fn brute_scc(g: &Graph, deleted: &[usize]) -> Vec<Vec<usize>> {
        let n = g.n();
        let reach: Vec<Vec<bool>> = (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut todo = vec![s];
                seen[s] = true;
                while let Some(v) = todo.pop() {
                    for &id in g.out_edge_ids(v) {
                        let h = g.edge(id as usize).head as usize;
                        if !deleted.contains(&(id as usize)) && !seen[h] {
                            seen[h] = true;
                            todo.push(h);
                        }
                    }
                }
                seen
            })
            .collect();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if done[v] {
                continue;
            }
            let comp: Vec<usize> = (0..n).filter(|&u| reach[v][u] && reach[u][v]).collect();
            for &u in &comp {
                done[u] = true;
            }
            out.push(comp);
        }
        out
    }

    #[test]
    fn scc_examples() {
        let g = Graph::new(3, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(scc(&g, &[]), vec![vec![0, 1], vec![2]]);
        let g = gen::cycle(4, 1);
        assert_eq!(scc(&g, &[2]).len(), 4);
    }

    #[test]
    fn scc_handles_long_paths_without_recursion() {
        let g = gen::cycle(200_000, 1);
        assert_eq!(scc(&g, &[]).len(), 1);
        assert_eq!(scc(&g, &[0]).len(), 200_000);
    }

    #[test]
    fn scc_matches_brute_force_corpus() {
        for seed in 0..1000u64 {
            let n = 1 + (seed as usize % 64);
            let m = (seed as usize * 7) % (3 * n + 1);
            let g = gen::random_digraph(n, m, 3, seed);
            let deleted: Vec<usize> = (0..m).filter(|i| (i * 31 + seed as usize).is_multiple_of(5)).collect();
            assert_eq!(scc(&g, &deleted), brute_scc(&g, &deleted), "seed {seed}");
        }
    }

    #[test]
    fn weak_diameter_examples() {
        let g = gen::cycle(4, 1);
        assert_eq!(weak_diameter(&g, &VertexSet::full(4)), Diameter::Finite(3));
        assert_eq!(weak_diameter(&g, &VertexSet::from_iter(4, [2])), Diameter::Finite(0));
        let p = gen::path(3, 1);
        assert_eq!(weak_diameter(&p, &VertexSet::from_iter(3, [0, 2])), Diameter::Infinite);
    }

    #[test]
    fn witness_reports_distance() {
        let g = gen::cycle(6, 1);
        let w = diameter_witness(&g, &[0, 1, 2, 3, 4, 5], 4).unwrap();
        assert_eq!(w.dist, Some(5));
        assert!(diameter_witness(&g, &[0, 1, 2, 3, 4, 5], 5).is_none());
        let p = gen::path(3, 1);
        assert_eq!(diameter_witness(&p, &[0, 2], 10), Some(Witness { u: 2, v: 0, dist: None }));
    }

    #[test]
    fn ball_edge_count_examples() {
        let p = gen::path(3, 1);
        assert_eq!(ball_edge_count(&p, 0, Direction::Out, Radius::from_weight(2)), 2);
        assert_eq!(ball_edge_count(&p, 2, Direction::Out, Radius::from_weight(2)), 0);
        let k2 = Graph::new(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(ball_edge_count(&k2, 0, Direction::In, Radius::from_weight(1)), 2);
    }

    fn result_for(delta: u64, deleted: Vec<usize>, components: Vec<Vec<usize>>) -> LddResult {
        LddResult { delta, seed: 0, deleted, components, case1_components: vec![], diagnostics: vec![], max_depth: 0 }
    }

    #[test]
    fn validate_accepts_and_rejects() {
        let g = Graph::new(3, &[]).unwrap();
        assert!(validate(&g, &result_for(5, vec![], vec![vec![0], vec![1], vec![2]])).ok());

        let g = gen::cycle(8, 1);
        let singles: Vec<Vec<usize>> = (0..8).map(|v| vec![v]).collect();
        assert!(validate(&g, &result_for(3, vec![0], singles.clone())).ok());
        let bad = validate(&g, &result_for(3, vec![], singles.clone()));
        assert!(bad.failures.iter().any(|f| matches!(f, Failure::SccDiameter { witness } if witness.dist > Some(3))));

        let bad = validate(&g, &result_for(3, vec![0, 0, 9], singles[1..].to_vec()));
        assert!(bad.failures.contains(&Failure::DuplicateEdgeId { edge: 0 }));
        assert!(bad.failures.contains(&Failure::InvalidEdgeId { edge: 9 }));
        assert!(bad.failures.contains(&Failure::VertexMissing { vertex: 0 }));
    }

    proptest! {
        #[test]
        fn weak_diameter_monotone(seed in any::<u64>(), a in any::<u32>(), b in any::<u32>()) {
            let g = gen::random_digraph(24, 80, 5, seed);
            let small = VertexSet::from_iter(24, (0..24).filter(|v| a >> v & 1 == 1));
            let large = VertexSet::from_iter(24, (0..24).filter(|v| (a | b) >> v & 1 == 1));
            prop_assert!(weak_diameter(&g, &small) <= weak_diameter(&g, &large));
        }
    }
}
