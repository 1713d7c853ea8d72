//! Recursive driver: heavy-vertex elimination then iterated cutting on every
//! instance, with results reported in the input graph's ids.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Direction, Graph};
use crate::heavy::{case1, case2, classify_with_samples, default_sample_count, find_close_pair};
use crate::ldd::{check_delta, run_iterations, CutEvent, IterationConfig, IterationStats};
use crate::rng::{derive_seed, phase_rng, Phase};
use crate::sssp::Radius;

#[derive(Clone, Debug)]
pub struct DecomposeConfig {
    /// Skip already-claimed regions while growing balls; never changes the output.
    pub speedup: bool,
    /// Emit one record per recursive instance.
    pub diagnostics: bool,
    /// Run the ball-volume monitor before every iteration after the first.
    pub monitor: bool,
    /// Wall time per instance in the records (breaks byte-for-byte reproducibility).
    pub timings: bool,
    /// Edge samples for classification; `None` uses `ceil(128 ln(n + 2))`.
    pub classify_samples: Option<usize>,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig { speedup: true, diagnostics: true, monitor: false, timings: false, classify_samples: None }
    }
}

impl DecomposeConfig {
    /// No per-instance records; what the Monte Carlo harness uses.
    pub fn quiet() -> Self {
        DecomposeConfig { diagnostics: false, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTaken {
    /// Too small to cut: at most one vertex or no edges.
    Base,
    Case1,
    Case2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationStats {
    pub direction: Direction,
    pub sampled: usize,
    pub radius: Radius,
    pub cuts: usize,
}

/// Diagnostics of one recursive instance. Vertex ids are original ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    pub n: usize,
    pub m: usize,
    pub case: CaseTaken,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classify_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_heavy: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_heavy: Option<usize>,
    /// `(s, t, d(s, t))` of case 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub close_pair: Option<(usize, usize, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_radius: Option<Radius>,
    /// Size of the ball around the in-heavy vertices in case 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heavy_ball_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elimination: Option<EliminationStats>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub iterations: Vec<IterationStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case1_component: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
}

impl InstanceRecord {
    fn new(id: usize, parent: Option<usize>, depth: usize, g: &Graph) -> Self {
        InstanceRecord {
            id,
            parent,
            depth,
            n: g.n(),
            m: g.m(),
            case: CaseTaken::Base,
            classify_samples: None,
            out_heavy: None,
            in_heavy: None,
            close_pair: None,
            case_radius: None,
            heavy_ball_size: None,
            elimination: None,
            iterations: Vec::new(),
            case1_component: None,
            wall_time_us: None,
        }
    }

    /// Ball-volume monitor violations over all iterations of this instance.
    pub fn lemma2_violations(&self) -> usize {
        self.iterations.iter().filter_map(|it| it.lemma2_violations.as_ref()).map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LddResult {
    pub delta: u64,
    pub seed: u64,
    /// Deleted edge ids, ascending.
    pub deleted: Vec<usize>,
    /// Finished vertex sets, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// Indices into `components` of the sets finished by case 1.
    #[serde(default)]
    pub case1_components: Vec<usize>,
    #[serde(default)]
    pub diagnostics: Vec<InstanceRecord>,
    pub max_depth: usize,
}

impl LddResult {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// One recursive instance: an induced subgraph of the input with its id translation.
struct Task {
    graph: Graph,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    seed: u64,
    depth: usize,
    parent: Option<usize>,
}

impl Task {
    /// Children on pairwise disjoint member sets; the k-th gets seed ordinal k.
    fn children(&self, parts: &[Vec<usize>], id: usize) -> Vec<Task> {
        self.graph
            .split_induced(parts)
            .into_iter()
            .enumerate()
            .map(|(ordinal, (graph, map))| Task {
                graph,
                vertices: map.vertices.iter().map(|&v| self.vertices[v]).collect(),
                edges: map.edges.iter().map(|&e| self.edges[e]).collect(),
                seed: derive_seed(self.seed, ordinal as u64),
                depth: self.depth + 1,
                parent: Some(id),
            })
            .collect()
    }

    fn orig(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&v| self.vertices[v]).collect()
    }
}

#[derive(Default)]
struct Collector {
    deleted: Vec<usize>,
    components: Vec<Vec<usize>>,
    case1: Vec<Vec<usize>>,
    records: Vec<InstanceRecord>,
    max_depth: usize,
}

/// Deletes a random edge set so that every strongly connected component of
/// what remains has weak diameter at most `delta`.
pub fn decompose(g: &Graph, delta: u64, seed: u64, config: &DecomposeConfig) -> Result<LddResult> {
    check_delta(delta)?;
    let mut out = Collector::default();
    let mut stack = vec![Task {
        graph: g.clone(),
        vertices: (0..g.n()).collect(),
        edges: (0..g.m()).collect(),
        seed,
        depth: 0,
        parent: None,
    }];
    let mut next_id = 0usize;
    while let Some(task) = stack.pop() {
        let id = next_id;
        next_id += 1;
        let children = process(&task, id, delta, config, &mut out)?;
        // Reverse so children are processed in emission order.
        stack.extend(children.into_iter().rev());
    }

    out.deleted.sort_unstable();
    out.deleted.dedup();
    out.components.sort_unstable_by_key(|c| c[0]);
    let mut case1_components: Vec<usize> = out
        .case1
        .iter()
        .map(|c| out.components.binary_search_by_key(&c[0], |x| x[0]).expect("case-1 component recorded"))
        .collect();
    case1_components.sort_unstable();
    log::info!(
        "decomposed n={} m={} delta={delta}: {} deleted, {} components, depth {}",
        g.n(),
        g.m(),
        out.deleted.len(),
        out.components.len(),
        out.max_depth
    );
    Ok(LddResult {
        delta,
        seed,
        deleted: out.deleted,
        components: out.components,
        case1_components,
        diagnostics: out.records,
        max_depth: out.max_depth,
    })
}

fn process(task: &Task, id: usize, delta: u64, config: &DecomposeConfig, out: &mut Collector) -> Result<Vec<Task>> {
    let start = Instant::now();
    let g = &task.graph;
    out.max_depth = out.max_depth.max(task.depth);
    let mut record = InstanceRecord::new(id, task.parent, task.depth, g);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let spawn = |members: &[usize], parts: &mut Vec<Vec<usize>>| {
        if !members.is_empty() {
            parts.push(members.to_vec());
        }
    };
    let delete = |events: &[CutEvent], out: &mut Collector| {
        for e in events {
            out.deleted.extend(e.deleted.iter().map(|&x| task.edges[x]));
        }
    };

    if g.n() <= 1 || g.m() == 0 {
        if g.n() == 1 {
            out.components.push(task.vertices.clone());
        } else {
            out.components.extend(task.vertices.iter().map(|&v| vec![v]));
        }
    } else {
        let samples = config.classify_samples.unwrap_or_else(|| default_sample_count(g.n()));
        let labels = classify_with_samples(g, delta, samples, &mut phase_rng(task.seed, Phase::Classify));
        record.classify_samples = Some(samples);
        record.out_heavy = Some(labels.out_heavy.iter().filter(|&&h| h).count());
        record.in_heavy = Some(labels.in_heavy.iter().filter(|&&h| h).count());

        if let Some(pair) = find_close_pair(g, &labels, delta) {
            let res = case1(g, pair, delta, &mut phase_rng(task.seed, Phase::CaseRadius));
            record.case = CaseTaken::Case1;
            record.close_pair = Some((task.vertices[pair.s], task.vertices[pair.t], pair.dist));
            record.case_radius = Some(res.radius);
            delete(&res.events, out);
            for side in &res.subinstances {
                spawn(side, &mut parts);
            }
            let comp = task.orig(&res.component);
            if !comp.is_empty() {
                let mut sorted = comp.clone();
                sorted.sort_unstable();
                out.case1.push(sorted.clone());
                out.components.push(sorted.clone());
                record.case1_component = Some(sorted);
            }
        } else {
            let res = case2(g, &labels, delta, task.seed, config.speedup);
            record.case = CaseTaken::Case2;
            record.case_radius = Some(res.radius);
            record.heavy_ball_size = Some(res.ball_size);
            record.elimination = Some(EliminationStats {
                direction: res.elimination_direction,
                sampled: res.elimination_sampled,
                radius: res.elimination_radius,
                cuts: res.elimination.len(),
            });
            delete(&res.events, out);
            delete(&res.elimination, out);
            spawn(&res.small_side, &mut parts);
            for e in &res.elimination {
                spawn(&e.claimed, &mut parts);
            }

            let mut working = res.working;
            let iter_cfg = IterationConfig { speedup: config.speedup, monitor: config.monitor };
            let it = run_iterations(g, &mut working, delta, task.seed, iter_cfg)?;
            delete(&it.events, out);
            for e in &it.events {
                spawn(&e.claimed, &mut parts);
            }
            out.components.extend(it.singletons.iter().map(|&v| vec![task.vertices[v]]));
            record.iterations = it
                .stats
                .into_iter()
                .map(|mut s| {
                    if let Some(bad) = s.lemma2_violations.as_mut() {
                        *bad = task.orig(bad);
                    }
                    s
                })
                .collect();
        }
    }
    log::debug!(
        "instance {id} depth {} n={} m={} {:?} -> {} children",
        task.depth,
        g.n(),
        g.m(),
        record.case,
        parts.len()
    );
    if config.timings {
        record.wall_time_us = Some(start.elapsed().as_micros() as u64);
    }
    if config.diagnostics || config.monitor {
        out.records.push(record);
    }
    Ok(task.children(&parts, id))
}
