use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dldd::bench::{doubling, BenchConfig};
use dldd::gen::{self, GadgetKind};
use dldd::io::{read_graph, write_edge_list};
use dldd::verify::{estimate_cut_probs, scc, validate, StatsConfig};
use dldd::{decompose, DecomposeConfig, Graph, LddResult};

/// Directed low-diameter decompositions of weighted graphs.
///
/// Set LDD_LOG (e.g. `LDD_LOG=debug`) for diagnostic output on stderr.
#[derive(Parser)]
#[command(name = "dldd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in edge-list format.
    Gen(GenArgs),
    /// Decompose a graph and print the result as JSON.
    Decompose(DecomposeArgs),
    /// Check a decomposition against its graph; exits 1 if it is invalid.
    Verify(VerifyArgs),
    /// Estimate per-edge cut probabilities over many seeds.
    Stats(StatsArgs),
    /// Time decompositions of random graphs of doubling size.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cycle,
    Path,
    Random,
    /// Bidirected grid with `--n` rows and `--cols` columns.
    Grid,
    /// Star whose center is both in- and out-heavy.
    HeavyClose,
    /// Heavy vertices that are pairwise far apart.
    HeavyFar,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Edge count for `random`; defaults to 4n.
    #[arg(long)]
    m: Option<usize>,
    /// Column count for `grid`; defaults to n.
    #[arg(long)]
    cols: Option<usize>,
    /// Largest weight; cycles and paths use it as the weight of every edge.
    #[arg(long, default_value_t = 1)]
    wmax: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target diameter for the heavy gadgets.
    #[arg(long, default_value_t = 32)]
    delta: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    delta: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include one record per recursive instance.
    #[arg(long)]
    diagnostics: bool,
    /// Record violations of the ball-volume bound (implies per-instance records).
    #[arg(long)]
    monitor: bool,
    /// Grow every ball from scratch instead of skipping claimed regions.
    #[arg(long)]
    no_speedup: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    result: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    delta: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Seed of the first trial; trial t uses seed + t.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Per-edge table.
    #[arg(long)]
    csv_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Edge counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize << 14, 1 << 15, 1 << 16])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    edges_per_vertex: usize,
    #[arg(long, default_value_t = 1_000_000)]
    delta: u64,
    #[arg(long, default_value_t = 1 << 20)]
    wmax: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[arg(long)]
    no_speedup: bool,
    /// Rerun each size with the speedup toggled and check the outputs agree.
    #[arg(long)]
    compare: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    /// Bad input or configuration: exit 2.
    Usage(String),
    /// The checked object is wrong: exit 1.
    Invalid,
}

impl From<dldd::Error> for Failure {
    fn from(e: dldd::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    read_graph(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let min_n = if matches!(a.kind, Kind::HeavyClose | Kind::HeavyFar) { 4 } else { 1 };
    if a.n < min_n || a.cols == Some(0) {
        return Err(Failure::Usage(format!("--n must be at least {min_n} for this kind")));
    }
    let g = match a.kind {
        Kind::Cycle => gen::cycle(a.n, a.wmax),
        Kind::Path => gen::path(a.n, a.wmax),
        Kind::Random => gen::random_digraph(a.n, a.m.unwrap_or(4 * a.n), a.wmax, a.seed),
        Kind::Grid => gen::bidirected_grid(a.n, a.cols.unwrap_or(a.n), a.wmax, a.seed),
        Kind::HeavyClose => gen::heavy_gadget(GadgetKind::ClosePair, a.n, a.delta),
        Kind::HeavyFar => gen::heavy_gadget(GadgetKind::FarPair, a.n, a.delta),
    };
    emit(&write_edge_list(&g), a.out.as_deref())
}

fn cmd_decompose(a: DecomposeArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input)?;
    let cfg = DecomposeConfig {
        speedup: !a.no_speedup,
        diagnostics: a.diagnostics,
        monitor: a.monitor,
        ..DecomposeConfig::quiet()
    };
    let res = decompose(&g, a.delta, a.seed, &cfg)?;
    let mut doc = serde_json::to_value(&res).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Value::Object(map) = &mut doc {
        map.insert("sccs".into(), json!(scc(&g, &res.deleted)));
    }
    let mut text = doc.to_string();
    text.push('\n');
    emit(&text, a.out.as_deref())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input)?;
    let text = fs::read_to_string(&a.result).map_err(|e| Failure::Usage(format!("{}: {e}", a.result.display())))?;
    let res = LddResult::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", a.result.display())))?;
    let report = validate(&g, &res);
    if report.ok() {
        println!("valid: {} deleted edges, {} strongly connected components", res.deleted.len(), report.scc_count);
        Ok(())
    } else {
        for f in &report.failures {
            println!("invalid: {f}");
        }
        Err(Failure::Invalid)
    }
}

fn cmd_stats(a: StatsArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input)?;
    let cfg = StatsConfig { trials: a.trials, base_seed: a.seed, jobs: a.jobs, kappa: a.kappa, ..Default::default() };
    let stats = estimate_cut_probs(&g, a.delta, &cfg)?;
    if let Some(path) = &a.csv_out {
        emit(&stats.to_csv(), Some(path))?;
    }
    emit(&pretty(&stats.summary)?, a.out.as_deref())
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    let cfg = BenchConfig {
        sizes: a.sizes,
        edges_per_vertex: a.edges_per_vertex,
        delta: a.delta,
        w_max: a.wmax,
        seed: a.seed,
        speedup: !a.no_speedup,
        repeats: a.repeats,
        compare_speedup: a.compare,
    };
    let rows = doubling(&cfg)?;
    for r in &rows {
        let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.2}"));
        let noisy = if r.noisy { " (noisy)" } else { "" };
        let toggled = match (r.toggled_seconds, r.identical) {
            (Some(t), Some(same)) => format!("  toggled {t:.3}s {}", if same { "identical" } else { "DIFFERENT" }),
            _ => String::new(),
        };
        eprintln!("n={:<9} m={:<9} {:>9.3}s  ratio {ratio}{noisy}{toggled}", r.n, r.m, r.seconds);
    }
    emit(&pretty(&rows)?, a.out.as_deref())?;
    if rows.iter().any(|r| r.identical == Some(false)) {
        return Err(Failure::Invalid);
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LDD_LOG", "warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
