//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line.
//!
//! Run with `cargo test -p dldd --test acceptance -- --nocapture` to see the lines.

use std::sync::OnceLock;
use std::time::Instant;

use dldd::bench::{doubling, BenchConfig};
use dldd::gen::{self, GadgetKind};
use dldd::graph::{Direction, Graph, VertexSet};
use dldd::heavy::classify;
use dldd::rng::{phase_rng, Phase};
use dldd::verify::{ball_edge_count, estimate_cut_probs, validate, weak_diameter, Diameter, StatsConfig};
use dldd::{decompose, CaseTaken, DecomposeConfig, LddResult, Radius};

const SEEDS_PER_FAMILY: u64 = 50;

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!("[{}] criterion {id} ({name}): {detail}", if pass { "PASS" } else { "FAIL" });
}

struct Family {
    name: &'static str,
    graph: Graph,
    delta: u64,
}

fn families() -> Vec<Family> {
    let multigraph = {
        let base = gen::random_digraph(64, 1024, 4, 10);
        let mut edges: Vec<(usize, usize, i64)> =
            base.edges().iter().map(|e| (e.tail as usize, e.head as usize, e.weight as i64)).collect();
        for v in 0..64 {
            edges.push((v, v, 1 + v as i64 % 3));
            edges.push((v, (v + 1) % 64, 2));
            edges.push((v, (v + 1) % 64, 2));
        }
        Graph::new(64, &edges).unwrap()
    };
    vec![
        Family { name: "cycle-64", graph: gen::cycle(64, 1), delta: 16 },
        Family { name: "cycle-4096", graph: gen::cycle(4096, 1), delta: 256 },
        Family { name: "path-1024", graph: gen::path(1024, 3), delta: 40 },
        Family { name: "random-sparse-1024", graph: gen::random_digraph(1024, 2048, 16, 1), delta: 64 },
        Family { name: "random-medium-4096", graph: gen::random_digraph(4096, 16384, 32, 2), delta: 200 },
        Family { name: "random-dense-256", graph: gen::random_digraph(256, 8192, 8, 3), delta: 24 },
        Family { name: "random-small-delta", graph: gen::random_digraph(300, 1200, 3, 4), delta: 1 },
        Family { name: "heavy-close-pair", graph: gen::heavy_gadget(GadgetKind::ClosePair, 64, 32), delta: 32 },
        Family { name: "heavy-far-pair", graph: gen::heavy_gadget(GadgetKind::FarPair, 64, 32), delta: 32 },
        Family { name: "zero-weight-mix", graph: gen::random_digraph(512, 2048, 2, 5), delta: 4 },
        Family { name: "multigraph-loops", graph: multigraph, delta: 6 },
        Family { name: "bidirected-grid", graph: gen::bidirected_grid(32, 32, 5, 6), delta: 30 },
    ]
}

struct SuiteRun {
    family: &'static str,
    graph_index: usize,
    seed: u64,
    m: usize,
    result: LddResult,
    failures: Vec<String>,
}

struct Suite {
    graphs: Vec<Family>,
    runs: Vec<SuiteRun>,
}

fn suite() -> &'static Suite {
    static SUITE: OnceLock<Suite> = OnceLock::new();
    SUITE.get_or_init(|| {
        let graphs = families();
        let mut runs = Vec::new();
        for (gi, fam) in graphs.iter().enumerate() {
            for seed in 0..SEEDS_PER_FAMILY {
                let result = decompose(&fam.graph, fam.delta, seed, &DecomposeConfig::default()).unwrap();
                let failures = validate(&fam.graph, &result).failures.iter().map(|f| f.to_string()).collect();
                runs.push(SuiteRun { family: fam.name, graph_index: gi, seed, m: fam.graph.m(), result, failures });
            }
        }
        Suite { graphs, runs }
    })
}

#[test]
fn criterion_1_validity() {
    let s = suite();
    let bad: Vec<String> = s
        .runs
        .iter()
        .filter(|r| !r.failures.is_empty())
        .map(|r| format!("{} seed {}: {}", r.family, r.seed, r.failures[0]))
        .collect();
    let max_n = s.graphs.iter().map(|f| f.graph.n()).max().unwrap();
    let pass = bad.is_empty() && s.graphs.len() >= 10 && max_n >= 4096;
    report(
        1,
        "validity",
        pass,
        format!("{} families, {} runs, n up to {max_n}, {} invalid", s.graphs.len(), s.runs.len(), bad.len()),
    );
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_6_case1_components() {
    let s = suite();
    let mut occurrences = 0usize;
    let mut bad = Vec::new();
    for run in &s.runs {
        let fam = &s.graphs[run.graph_index];
        let n = fam.graph.n();
        for &c in &run.result.case1_components {
            occurrences += 1;
            let comp = VertexSet::from_iter(n, run.result.components[c].iter().copied());
            match weak_diameter(&fam.graph, &comp) {
                Diameter::Finite(d) if d <= fam.delta => {}
                other => bad.push(format!("{} seed {}: {other:?} > {}", run.family, run.seed, fam.delta)),
            }
        }
    }
    let pass = bad.is_empty() && occurrences > 0;
    report(6, "case-1 weak diameter", pass, format!("{occurrences} case-1 components, {} too wide", bad.len()));
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_7_recursion_depth() {
    let s = suite();
    let mut worst = (0.0f64, "");
    let mut bad = Vec::new();
    for run in &s.runs {
        let bound = 8.0 * ((run.m + 2) as f64).log2();
        let ratio = run.result.max_depth as f64 / bound;
        if ratio > worst.0 {
            worst = (ratio, run.family);
        }
        if run.result.max_depth as f64 > bound {
            bad.push(format!("{} seed {}: depth {} > {bound:.1}", run.family, run.seed, run.result.max_depth));
        }
    }
    let deepest = s.runs.iter().map(|r| r.result.max_depth).max().unwrap();
    let pass = bad.is_empty();
    report(
        7,
        "recursion depth",
        pass,
        format!("deepest {deepest}, worst depth / (8 lg(m+2)) = {:.3} on {}", worst.0, worst.1),
    );
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_2_cut_probability_scaling() {
    let start = Instant::now();
    let mut l_hats = Vec::new();
    let mut envelope_ok = true;
    let mut details = Vec::new();
    for n in [64usize, 256, 1024] {
        let g = gen::cycle(n, 1);
        let delta = (n / 4) as u64;
        let cfg = StatsConfig { trials: 2000, base_seed: 1, ..Default::default() };
        let stats = estimate_cut_probs(&g, delta, &cfg).unwrap();
        let m = g.m() as f64;
        let envelope = (64.0 * m.log2() * (m * delta as f64).log2().log2() / delta as f64).min(1.0);
        let worst_p = stats.edges.iter().map(|e| e.p_hat).fold(0.0, f64::max);
        envelope_ok &= worst_p <= envelope;
        details.push(format!("n={n}: l_hat={:.2} max p={worst_p:.4} envelope={envelope:.3}", stats.summary.l_hat));
        l_hats.push(stats.summary.l_hat);
    }
    let ratio = l_hats[2] / l_hats[0];
    let pass = l_hats.iter().all(|l| l.is_finite() && *l > 0.0) && ratio <= 4.0 && envelope_ok;
    report(
        2,
        "cut-probability scaling",
        pass,
        format!(
            "{}; l_hat(1024)/l_hat(64)={ratio:.3} (<= 4); {:.0}s",
            details.join("; "),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_speedup_equivalence() {
    let mut mismatches = Vec::new();
    for seed in 0..100u64 {
        let g = gen::random_digraph(256, 2048, 64, 1000 + seed);
        let delta = 256;
        let on = decompose(&g, delta, seed, &DecomposeConfig { speedup: true, ..Default::default() }).unwrap();
        let off = decompose(&g, delta, seed, &DecomposeConfig { speedup: false, ..Default::default() }).unwrap();
        if on.to_json().unwrap() != off.to_json().unwrap() {
            mismatches.push(seed);
        }
    }
    let pass = mismatches.is_empty();
    report(3, "skip-speedup equivalence", pass, format!("100 seeds, {} mismatches", mismatches.len()));
    assert!(pass, "{mismatches:?}");
}

#[test]
fn criterion_4_classifier_contract() {
    let mut graphs: Vec<(String, Graph, u64)> = (0..50u64)
        .map(|i| {
            let delta = [16, 48, 96, 160, 400][i as usize % 5];
            (format!("random-{i}"), gen::random_digraph(128, 512, 16, 500 + i), delta)
        })
        .collect();
    graphs.push(("close-pair".into(), gen::heavy_gadget(GadgetKind::ClosePair, 128, 32), 32));
    graphs.push(("far-pair".into(), gen::heavy_gadget(GadgetKind::FarPair, 128, 32), 32));

    let mut violations = Vec::new();
    let (mut forced_heavy, mut forced_light) = (0usize, 0usize);
    for (i, (name, g, delta)) in graphs.iter().enumerate() {
        let labels = classify(g, *delta, &mut phase_rng(i as u64, Phase::Classify));
        let m = g.m();
        let r = Radius::from_ratio(*delta, 8);
        for v in 0..g.n() {
            for (dir, heavy) in [(Direction::Out, labels.out_heavy[v]), (Direction::In, labels.in_heavy[v])] {
                let count = ball_edge_count(g, v, dir, r);
                if 4 * count > 3 * m {
                    forced_heavy += 1;
                    if !heavy {
                        violations.push(format!("{name}: {v} {dir:?} ({count}/{m}) labeled light"));
                    }
                } else if 2 * count < m {
                    forced_light += 1;
                    if heavy {
                        violations.push(format!("{name}: {v} {dir:?} ({count}/{m}) labeled heavy"));
                    }
                }
            }
        }
    }
    let pass = violations.is_empty();
    report(
        4,
        "classifier contract",
        pass,
        format!(
            "{} graphs, {forced_heavy} forced-heavy and {forced_light} forced-light labels, {} wrong",
            graphs.len(),
            violations.len()
        ),
    );
    assert!(pass, "{violations:?}");
}

#[test]
fn criterion_5_lemma2_monitor() {
    let runs = 500u64;
    let mut flagged = 0u64;
    let mut checked_iterations = 0usize;
    for seed in 0..runs {
        let g = gen::random_digraph(512, 2048, 16, 7000 + seed);
        let cfg = DecomposeConfig { monitor: true, ..Default::default() };
        let r = decompose(&g, 64, seed, &cfg).unwrap();
        checked_iterations +=
            r.diagnostics.iter().flat_map(|d| &d.iterations).filter(|it| it.lemma2_violations.is_some()).count();
        if r.diagnostics.iter().any(|d| d.lemma2_violations() > 0) {
            flagged += 1;
        }
    }
    let pass = flagged * 100 <= runs && checked_iterations > 0;
    report(
        5,
        "ball-volume monitor",
        pass,
        format!("{flagged}/{runs} runs with violations (<= 1%), {checked_iterations} iterations checked"),
    );
    assert!(pass);
}

#[test]
fn criterion_8_performance_scaling() {
    let cfg = BenchConfig { sizes: vec![1 << 18, 1 << 19, 1 << 20], ..Default::default() };
    let rows = doubling(&cfg).unwrap();
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let largest = rows.last().unwrap().seconds;
    let pass = ratios.iter().all(|&r| r <= 2.6) && largest <= 120.0;
    let times: Vec<String> = rows.iter().map(|r| format!("m={} {:.2}s", r.m, r.seconds)).collect();
    report(
        8,
        "performance scaling",
        pass,
        format!("{}; ratios {:?} (<= 2.6); largest {largest:.1}s (<= 120s)", times.join(", "), ratios),
    );
    assert!(pass);
}

#[test]
fn suite_covers_both_cases() {
    let s = suite();
    let cases: Vec<CaseTaken> = s.runs.iter().flat_map(|r| r.result.diagnostics.iter().map(|d| d.case)).collect();
    assert!(cases.contains(&CaseTaken::Case1));
    assert!(cases.contains(&CaseTaken::Case2));
}
