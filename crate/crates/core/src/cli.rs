//! Command-line front end: `sparsify`, `verify`, `stats`, `count-trees`.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 a backbone
//! invariant failed. Tables go to stdout, diagnostics to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::backbone::{verify_zfs_backbone_monotonicity, Backbone, BackboneMethod, Violation};
use crate::controllability::{dl_vectors, generic_rank, DEFAULT_RANK_TOL};
use crate::dataset::{
    compute_stats, dataset_stats, file_path, read_dataset, read_leaders, sparsify_dataset,
    write_dataset, write_leaders, DatasetBundle,
};
use crate::error::Error;
use crate::graph::Graph;
use crate::seeding::derive_seed;
use crate::zero_forcing::{apply_zero_forcing, LeaderSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "backbone",
    version,
    about = "Controllability backbones for graph datasets"
)]
pub struct Cli {
    /// Worker threads (default: logical CPU count).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replace every graph of a dataset by its backbone.
    Sparsify(SparsifyArgs),
    /// Check a sparsified dataset against its original.
    Verify(VerifyArgs),
    /// Print dataset statistics.
    Stats(StatsArgs),
    /// Exact spanning-tree count of one graph, with the closed-form bound.
    CountTrees(CountTreesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Zfs,
    Distance,
    RandomTree,
}

impl MethodArg {
    pub fn resolve(self, tree: bool) -> BackboneMethod {
        match (self, tree) {
            (MethodArg::Zfs, _) => BackboneMethod::Zfs,
            (MethodArg::Distance, false) => BackboneMethod::Distance,
            (MethodArg::Distance, true) => BackboneMethod::DistanceTree,
            (MethodArg::RandomTree, _) => BackboneMethod::RandomTree,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DatasetArgs {
    /// Directory holding NAME_A.txt and friends.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Dataset file prefix.
    #[arg(long, short)]
    pub name: String,
}

#[derive(Debug, Clone, Args)]
pub struct SparsifyArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Directory for the sparsified dataset, leaders log and stats sidecar.
    #[arg(long, short)]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value = "zfs")]
    pub method: MethodArg,
    /// Seed for random-tree; graph i uses a seed derived from (seed, i).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Make the distance backbone a spanning forest.
    #[arg(long)]
    pub tree: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Directory with the sparsified dataset and its leaders log.
    #[arg(long, short)]
    pub backbone: PathBuf,
    #[arg(long, value_enum, default_value = "zfs")]
    pub method: MethodArg,
    /// The backbone was built with `sparsify --method distance --tree`.
    #[arg(long)]
    pub tree: bool,
    /// Seed for the monotonicity samples and rank trials.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Monotonicity samples (and rank trials) per graph.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Also require generic rank n of every zfs backbone.
    #[arg(long)]
    pub rank_check: bool,
    /// Relative singular-value threshold for the rank check.
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Dataset prefix; repeat for several datasets in the same directory.
    #[arg(long, short, required = true)]
    pub name: Vec<String>,
    /// Directory with sparsified datasets of the same names.
    #[arg(long, short)]
    pub backbone: Option<PathBuf>,
    /// Also write NAME_stats.json next to each dataset in this directory.
    #[arg(long)]
    pub json_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CountTreesArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// 0-based graph index.
    #[arg(long, short, default_value_t = 0)]
    pub graph_index: usize,
}

/// Runs a parsed command line, writing tables to `out` and diagnostics to
/// `err`.
pub fn run(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32 {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_INPUT;
        }
    };
    pool.install(|| match cli.command {
        Command::Sparsify(a) => cmd_sparsify(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Stats(a) => cmd_stats(&a, out, err),
        Command::CountTrees(a) => cmd_count_trees(&a, out, err),
    })
}

fn load(dir: &Path, name: &str, err: &mut dyn Write) -> Option<DatasetBundle> {
    match read_dataset(dir, name) {
        Ok(b) => Some(b),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            None
        }
    }
}

fn report_error(err: &mut dyn Write, e: Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_INPUT
}

pub fn cmd_sparsify(a: &SparsifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(original) = load(&a.dataset.input, &a.dataset.name, err) else {
        return EXIT_INPUT;
    };
    let method = a.method.resolve(a.tree);
    let sparsified = match sparsify_dataset(&original, method, a.seed) {
        Ok(s) => s,
        Err(e) => return report_error(err, e),
    };
    if let Err(e) = write_dataset(&sparsified.bundle, &a.output)
        .and_then(|_| write_leaders(&a.output, &a.dataset.name, &sparsified.leaders))
    {
        return report_error(err, e);
    }
    let stats = match compute_stats(&original, &sparsified.bundle) {
        Ok(s) => s,
        Err(e) => return report_error(err, e),
    };
    let json_path = a.output.join(format!("{}_stats.json", a.dataset.name));
    let json = serde_json::to_string_pretty(&stats).expect("stats serialize");
    if let Err(e) = std::fs::write(&json_path, json + "\n") {
        return report_error(err, Error::io(json_path, e));
    }
    let _ = writeln!(out, "method: {method}");
    let _ = writeln!(out, "{}", crate::dataset::StatsReport::TABLE_HEADER);
    let _ = writeln!(out, "{}", stats.table_row());
    if !sparsified.violations.is_empty() {
        for (i, v) in sparsified.violations.iter().take(10) {
            let _ = writeln!(err, "graph {i}: {v}");
        }
        let _ = writeln!(
            err,
            "{} invariant violations after construction",
            sparsified.violations.len()
        );
        return EXIT_INVARIANT;
    }
    EXIT_OK
}

/// Per-graph verification outcome.
#[derive(Debug, Clone, Default)]
pub struct GraphCheck {
    pub failures: Vec<String>,
}

/// Runs every check that applies to `method` on one original/backbone pair.
pub fn check_graph(
    host: &Graph,
    sub: &Graph,
    leaders: &LeaderSet,
    method: BackboneMethod,
    a: &VerifyArgs,
    index: usize,
) -> GraphCheck {
    let mut failures = Vec::new();
    if sub.n() != host.n() {
        failures.push(format!("node count {} != {}", sub.n(), host.n()));
        return GraphCheck { failures };
    }
    if let Some(&(u, v)) = sub
        .edge_set()
        .iter()
        .find(|&&(u, v)| !host.contains_edge(u, v))
    {
        failures.push(format!("containment: edge ({u}, {v}) not in original"));
        return GraphCheck { failures };
    }
    if method.is_tree() && !host.is_spanning_forest(sub.edge_set()).unwrap_or(false) {
        failures.push("not a spanning forest".into());
    }
    let seed = derive_seed(a.seed, index as u64);
    match method {
        BackboneMethod::Zfs => check_zfs(host, sub, leaders, a, seed, &mut failures),
        BackboneMethod::Distance => {
            if !leaders.is_empty() {
                match (dl_vectors(host, leaders), dl_vectors(sub, leaders)) {
                    (Ok(x), Ok(y)) if x == y => {}
                    (Ok(_), Ok(_)) => failures.push("distance-to-leader vectors changed".into()),
                    (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
                }
            }
        }
        BackboneMethod::DistanceTree | BackboneMethod::RandomTree => {}
    }
    GraphCheck { failures }
}

fn check_zfs(
    host: &Graph,
    sub: &Graph,
    leaders: &LeaderSet,
    a: &VerifyArgs,
    seed: u64,
    failures: &mut Vec<String>,
) {
    let run = match apply_zero_forcing(sub, leaders) {
        Ok(r) => r,
        Err(e) => {
            failures.push(e.to_string());
            return;
        }
    };
    if !run.is_complete() {
        failures.push(format!(
            "zero forcing colors {} of {} vertices",
            run.zeta(),
            sub.n()
        ));
    }
    let force_edges = match apply_zero_forcing(host, leaders) {
        Ok(r) => r.record.force_edges(),
        Err(e) => {
            failures.push(e.to_string());
            return;
        }
    };
    let backbone = Backbone {
        host,
        leaders: leaders.clone(),
        kept_edges: sub.edge_set().clone(),
        force_edges,
        method: BackboneMethod::Zfs,
    };
    for v in backbone.violations() {
        if let Violation::MissingForceEdge(_) = v {
            failures.push(v.to_string());
        }
    }
    match verify_zfs_backbone_monotonicity(host, &backbone, a.trials, seed) {
        Ok(r) if r.all_passed() => {}
        Ok(r) => failures.push(format!(
            "monotonicity failed in {} of {} samples",
            r.failures(),
            r.trials.len()
        )),
        Err(e) => failures.push(e.to_string()),
    }
    if a.rank_check && sub.n() > 0 {
        match generic_rank(sub, leaders, a.trials.max(1), seed, a.rank_tol) {
            Ok(est) if est.rank == sub.n() => {}
            Ok(est) => failures.push(format!("generic rank {} < n = {}", est.rank, sub.n())),
            Err(e) => failures.push(e.to_string()),
        }
    }
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let name = &a.dataset.name;
    let Some(original) = load(&a.dataset.input, name, err) else {
        return EXIT_INPUT;
    };
    let Some(sparse) = load(&a.backbone, name, err) else {
        return EXIT_INPUT;
    };
    if original.len() != sparse.len() {
        let _ = writeln!(
            err,
            "error: {} original graphs vs {} backbone graphs",
            original.len(),
            sparse.len()
        );
        return EXIT_INPUT;
    }
    let method = a.method.resolve(a.tree);
    let leaders = if file_path(&a.backbone, name, "leaders").exists() {
        match read_leaders(&a.backbone, name, &original) {
            Ok(l) => l,
            Err(e) => return report_error(err, e),
        }
    } else if method == BackboneMethod::RandomTree {
        vec![LeaderSet::empty(); original.len()]
    } else {
        let _ = writeln!(
            err,
            "error: {} missing",
            file_path(&a.backbone, name, "leaders").display()
        );
        return EXIT_INPUT;
    };

    let results: Vec<GraphCheck> = (0..original.len())
        .into_par_iter()
        .map(|i| {
            check_graph(
                &original.graphs[i],
                &sparse.graphs[i],
                &leaders[i],
                method,
                a,
                i,
            )
        })
        .collect();
    let failing: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.failures.is_empty())
        .map(|(i, _)| i)
        .collect();
    let _ = writeln!(
        out,
        "{name} ({method}): {} graphs checked, {} passed, {} failed",
        results.len(),
        results.len() - failing.len(),
        failing.len()
    );
    if failing.is_empty() {
        return EXIT_OK;
    }
    for &i in failing.iter().take(10) {
        let _ = writeln!(err, "graph {i}: {}", results[i].failures.join("; "));
    }
    EXIT_INVARIANT
}

pub fn cmd_stats(a: &StatsArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut rows = Vec::new();
    for name in &a.name {
        let Some(original) = load(&a.input, name, err) else {
            return EXIT_INPUT;
        };
        let stats = match &a.backbone {
            Some(dir) => {
                let Some(bb) = load(dir, name, err) else {
                    return EXIT_INPUT;
                };
                compute_stats(&original, &bb)
            }
            None => dataset_stats(&original),
        };
        match stats {
            Ok(s) => rows.push(s),
            Err(e) => return report_error(err, e),
        }
    }
    let _ = writeln!(out, "{}", crate::dataset::StatsReport::TABLE_HEADER);
    for s in &rows {
        let _ = writeln!(out, "{}", s.table_row());
    }
    if let Some(dir) = &a.json_dir {
        for s in &rows {
            let path = dir.join(format!("{}_stats.json", s.name));
            let json = serde_json::to_string_pretty(s).expect("stats serialize");
            if let Err(e) = std::fs::write(&path, json + "\n") {
                return report_error(err, Error::io(path, e));
            }
        }
    }
    EXIT_OK
}

pub fn cmd_count_trees(a: &CountTreesArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(bundle) = load(&a.dataset.input, &a.dataset.name, err) else {
        return EXIT_INPUT;
    };
    let Some(g) = bundle.graphs.get(a.graph_index) else {
        let _ = writeln!(
            err,
            "error: graph index {} out of range ({} graphs)",
            a.graph_index,
            bundle.len()
        );
        return EXIT_INPUT;
    };
    let _ = writeln!(
        out,
        "graph {}: n = {}, m = {}",
        a.graph_index,
        g.n(),
        g.edge_count()
    );
    let count = g.spanning_tree_count();
    let _ = writeln!(out, "spanning trees: {count}");
    if !g.is_connected() {
        let _ = writeln!(out, "note: graph is disconnected, it has no spanning tree");
    }
    match g.spanning_tree_upper_bound() {
        Ok(b) => {
            let _ = writeln!(out, "upper bound: {b}");
            if count.to_f64().is_some_and(|c| c > b) {
                let _ = writeln!(
                    out,
                    "note: the count exceeds the closed-form bound for this graph"
                );
            }
        }
        Err(_) => {
            let _ = writeln!(out, "upper bound: n/a (needs n > 3)");
        }
    }
    EXIT_OK
}
