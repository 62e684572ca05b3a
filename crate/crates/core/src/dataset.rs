//! Graph-classification datasets in the TU benchmark multi-file layout.
//!
//! For a dataset `NAME` the directory holds:
//!
//! ```text
//! NAME_A.txt               "u, v" per line, 1-indexed global node ids
//! NAME_graph_indicator.txt graph id (1-indexed) of node i on line i
//! NAME_graph_labels.txt    class label of graph i on line i
//! NAME_node_labels.txt     optional, integer label of node i on line i
//! NAME_leaders.txt         written by sparsification: 0-indexed local leader
//!                          ids per graph, space separated
//! ```

use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backbone::{
    distance_backbone, distance_tree_backbone, random_spanning_tree, zfs_backbone, BackboneMethod,
    Violation,
};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};
use crate::seeding::derive_seed;
use crate::zero_forcing::{greedy_zfs, LeaderSet};

/// Graphs with class labels and optional per-node labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetBundle {
    pub name: String,
    pub graphs: Vec<Graph>,
    /// Class of each graph, normalized to `0..=C`.
    pub labels: Vec<usize>,
    pub node_labels: Option<Vec<Vec<i64>>>,
}

impl DatasetBundle {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.graphs.iter().map(Graph::n).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.labels.len() != self.graphs.len() {
            return Err(Error::input(format!(
                "{} labels for {} graphs",
                self.labels.len(),
                self.graphs.len()
            )));
        }
        if let Some(nl) = &self.node_labels {
            if nl.len() != self.graphs.len() {
                return Err(Error::input("node label lists do not match graph count"));
            }
            for (i, (labels, g)) in nl.iter().zip(&self.graphs).enumerate() {
                if labels.len() != g.n() {
                    return Err(Error::input(format!(
                        "graph {i}: {} node labels for {} nodes",
                        labels.len(),
                        g.n()
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn file_path(dir: &Path, name: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{name}_{suffix}.txt"))
}

fn open_lines(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    BufReader::new(file)
        .lines()
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| Error::io(path, e))
}

fn format_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Non-blank lines parsed as integers, with 1-based line numbers.
fn read_ints(path: &Path) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    let lines = open_lines(path)?;
    let last_content = lines.iter().rposition(|l| !l.trim().is_empty());
    for (i, line) in lines.iter().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            if last_content.is_some_and(|last| i < last) {
                return Err(format_err(path, i + 1, "blank line"));
            }
            continue;
        }
        let v = t
            .parse::<i64>()
            .map_err(|_| format_err(path, i + 1, format!("expected an integer, got {t:?}")))?;
        out.push((i + 1, v));
    }
    Ok(out)
}

/// Counts of input records that [`read_dataset`] discarded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

/// Reads `dir/NAME_*.txt`. Node ids are remapped per graph to `0..n_i` in
/// file order and class labels to their rank among the distinct values.
pub fn read_dataset(dir: &Path, name: &str) -> Result<DatasetBundle> {
    read_dataset_with_report(dir, name).map(|(b, _)| b)
}

pub fn read_dataset_with_report(dir: &Path, name: &str) -> Result<(DatasetBundle, IngestReport)> {
    let ind_path = file_path(dir, name, "graph_indicator");
    let lab_path = file_path(dir, name, "graph_labels");
    let adj_path = file_path(dir, name, "A");
    let node_lab_path = file_path(dir, name, "node_labels");

    let raw_labels: Vec<i64> = read_ints(&lab_path)?.into_iter().map(|(_, v)| v).collect();
    let graph_count = raw_labels.len();

    let indicator = read_ints(&ind_path)?;
    let mut graph_of = Vec::with_capacity(indicator.len());
    let mut local = Vec::with_capacity(indicator.len());
    let mut sizes = vec![0usize; graph_count];
    for &(line, gid) in &indicator {
        if gid < 1 || gid as usize > graph_count {
            return Err(format_err(
                &ind_path,
                line,
                format!("graph id {gid} outside 1..={graph_count}"),
            ));
        }
        let g = gid as usize - 1;
        graph_of.push(g);
        local.push(sizes[g]);
        sizes[g] += 1;
    }
    let node_total = graph_of.len();

    let mut edge_sets: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); graph_count];
    let mut seen_directed = BTreeSet::new();
    let mut report = IngestReport::default();
    let lines = open_lines(&adj_path)?;
    for (i, line) in lines.iter().enumerate() {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let mut parts = t.split(',').map(str::trim);
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format_err(
                &adj_path,
                lineno,
                format!("expected \"u, v\", got {t:?}"),
            ));
        };
        let parse = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| format_err(&adj_path, lineno, format!("bad node id {s:?}")))?;
            if v < 1 || v > node_total {
                return Err(format_err(
                    &adj_path,
                    lineno,
                    format!("node id {v} outside 1..={node_total}"),
                ));
            }
            Ok(v - 1)
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if graph_of[u] != graph_of[v] {
            return Err(format_err(
                &adj_path,
                lineno,
                format!(
                    "edge ({}, {}) joins graphs {} and {}",
                    u + 1,
                    v + 1,
                    graph_of[u] + 1,
                    graph_of[v] + 1
                ),
            ));
        }
        if u == v {
            report.self_loops += 1;
            continue;
        }
        if !seen_directed.insert((u, v)) {
            report.duplicate_edges += 1;
            continue;
        }
        edge_sets[graph_of[u]].insert(edge(local[u], local[v]));
    }
    if report.self_loops + report.duplicate_edges > 0 {
        log::warn!(
            "{}: dropped {} self-loops and {} duplicate edges",
            adj_path.display(),
            report.self_loops,
            report.duplicate_edges
        );
    }

    let node_labels = if node_lab_path.exists() {
        let vals = read_ints(&node_lab_path)?;
        if vals.len() != node_total {
            return Err(format_err(
                &node_lab_path,
                vals.len() + 1,
                format!("{} node labels for {node_total} nodes", vals.len()),
            ));
        }
        let mut per_graph: Vec<Vec<i64>> = sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (node, &(_, v)) in vals.iter().enumerate() {
            per_graph[graph_of[node]].push(v);
        }
        Some(per_graph)
    } else {
        None
    };

    let mut distinct = raw_labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let labels = raw_labels
        .iter()
        .map(|l| distinct.binary_search(l).expect("label present"))
        .collect();

    let graphs = edge_sets
        .into_iter()
        .zip(&sizes)
        .map(|(edges, &n)| Graph::from_edge_set(n, edges))
        .collect();

    Ok((
        DatasetBundle {
            name: name.to_string(),
            graphs,
            labels,
            node_labels,
        },
        report,
    ))
}

fn write_file<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// Writes the bundle under `dir` using `b.name` as the file prefix. Edges
/// are listed in both directions, ascending by `(u, v)`.
pub fn write_dataset(b: &DatasetBundle, dir: &Path) -> Result<()> {
    b.validate()?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let name = &b.name;

    write_file(&file_path(dir, name, "A"), |w| {
        let mut offset = 0;
        let mut pairs = Vec::new();
        for g in &b.graphs {
            pairs.clear();
            for (u, v) in g.edges() {
                pairs.push((u, v));
                pairs.push((v, u));
            }
            pairs.sort_unstable();
            for &(u, v) in &pairs {
                writeln!(w, "{}, {}", u + offset + 1, v + offset + 1)?;
            }
            offset += g.n();
        }
        Ok(())
    })?;

    write_file(&file_path(dir, name, "graph_indicator"), |w| {
        for (i, g) in b.graphs.iter().enumerate() {
            for _ in 0..g.n() {
                writeln!(w, "{}", i + 1)?;
            }
        }
        Ok(())
    })?;

    write_file(&file_path(dir, name, "graph_labels"), |w| {
        b.labels.iter().try_for_each(|l| writeln!(w, "{l}"))
    })?;

    if let Some(nl) = &b.node_labels {
        write_file(&file_path(dir, name, "node_labels"), |w| {
            nl.iter().flatten().try_for_each(|l| writeln!(w, "{l}"))
        })?;
    }
    Ok(())
}

/// One line per graph: its leader ids, space separated.
pub fn write_leaders(dir: &Path, name: &str, leaders: &[LeaderSet]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_file(&file_path(dir, name, "leaders"), |w| {
        for set in leaders {
            let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    })
}

/// Reads a leaders log and validates each line against `bundle`'s graphs.
pub fn read_leaders(dir: &Path, name: &str, bundle: &DatasetBundle) -> Result<Vec<LeaderSet>> {
    let path = file_path(dir, name, "leaders");
    let lines = open_lines(&path)?;
    if lines.len() != bundle.len() {
        return Err(format_err(
            &path,
            lines.len(),
            format!("{} leader lines for {} graphs", lines.len(), bundle.len()),
        ));
    }
    lines
        .iter()
        .zip(&bundle.graphs)
        .enumerate()
        .map(|(i, (line, g))| {
            let ids = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| format_err(&path, i + 1, format!("bad leader id {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            LeaderSet::new(g.n(), ids).map_err(|e| format_err(&path, i + 1, e.to_string()))
        })
        .collect()
}

/// Output of [`sparsify_dataset`].
#[derive(Debug, Clone)]
pub struct Sparsified {
    pub bundle: DatasetBundle,
    /// Leader set used for each graph (empty for random trees).
    pub leaders: Vec<LeaderSet>,
    /// Broken backbone invariants as `(graph index, violation)`; empty when
    /// every construction checked out.
    pub violations: Vec<(usize, Violation)>,
}

/// Replaces every graph by its backbone. Class and node labels pass through
/// unchanged. Graph `i` of a random-tree run is seeded with
/// `derive_seed(seed, i)`; the distance methods use the greedy
/// zero-forcing set as leaders.
pub fn sparsify_dataset(
    b: &DatasetBundle,
    method: BackboneMethod,
    seed: u64,
) -> Result<Sparsified> {
    let per_graph = b
        .graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| sparsify_graph(g, method, derive_seed(seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let mut graphs = Vec::with_capacity(per_graph.len());
    let mut leaders = Vec::with_capacity(per_graph.len());
    let mut violations = Vec::new();
    for (i, (g, l, v)) in per_graph.into_iter().enumerate() {
        graphs.push(g);
        leaders.push(l);
        violations.extend(v.into_iter().map(|v| (i, v)));
    }
    Ok(Sparsified {
        bundle: DatasetBundle {
            name: b.name.clone(),
            graphs,
            labels: b.labels.clone(),
            node_labels: b.node_labels.clone(),
        },
        leaders,
        violations,
    })
}

fn sparsify_graph(
    g: &Graph,
    method: BackboneMethod,
    seed: u64,
) -> Result<(Graph, LeaderSet, Vec<Violation>)> {
    if g.n() == 0 {
        return Ok((g.clone(), LeaderSet::empty(), Vec::new()));
    }
    let b = match method {
        BackboneMethod::Zfs => zfs_backbone(g),
        BackboneMethod::Distance => distance_backbone(g, &greedy_zfs(g))?,
        BackboneMethod::DistanceTree => distance_tree_backbone(g, &greedy_zfs(g))?,
        BackboneMethod::RandomTree => random_spanning_tree(g, seed),
    };
    let violations = b.violations();
    Ok((b.to_graph(), b.leaders.clone(), violations))
}

/// Dataset summary: sizes, mean per-graph average degree and density
/// extremes, for the original graphs and optionally their backbones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub name: String,
    pub graph_count: usize,
    pub node_min: usize,
    pub node_max: usize,
    pub avg_degree_original: f64,
    pub avg_degree_backbone: Option<f64>,
    pub density_original_min: Option<f64>,
    pub density_original_max: Option<f64>,
    pub density_backbone_min: Option<f64>,
    pub density_backbone_max: Option<f64>,
}

fn mean_average_degree(b: &DatasetBundle) -> f64 {
    let vals: Vec<f64> = b
        .graphs
        .iter()
        .filter_map(|g| g.average_degree().ok())
        .collect();
    if vals.is_empty() {
        0.0
    } else {
        vals.iter().sum::<f64>() / vals.len() as f64
    }
}

/// Density extremes over graphs with at least two nodes.
fn density_range(b: &DatasetBundle) -> (Option<f64>, Option<f64>) {
    b.graphs.iter().filter_map(|g| g.density().ok()).fold(
        (None, None),
        |(lo, hi): (Option<f64>, Option<f64>), d| {
            (
                Some(lo.map_or(d, |x| x.min(d))),
                Some(hi.map_or(d, |x| x.max(d))),
            )
        },
    )
}

/// Statistics of the original graphs alone.
pub fn dataset_stats(original: &DatasetBundle) -> Result<StatsReport> {
    if original.is_empty() {
        return Err(Error::input("statistics of an empty dataset"));
    }
    let sizes = original.graphs.iter().map(Graph::n);
    let (density_original_min, density_original_max) = density_range(original);
    Ok(StatsReport {
        name: original.name.clone(),
        graph_count: original.len(),
        node_min: sizes.clone().min().unwrap_or(0),
        node_max: sizes.max().unwrap_or(0),
        avg_degree_original: mean_average_degree(original),
        avg_degree_backbone: None,
        density_original_min,
        density_original_max,
        density_backbone_min: None,
        density_backbone_max: None,
    })
}

/// Statistics of an original dataset and its sparsified counterpart; the
/// two must agree graph by graph on node counts.
pub fn compute_stats(original: &DatasetBundle, backbone: &DatasetBundle) -> Result<StatsReport> {
    if original.len() != backbone.len() {
        return Err(Error::input(format!(
            "{} original graphs vs {} backbone graphs",
            original.len(),
            backbone.len()
        )));
    }
    if let Some(i) = (0..original.len()).find(|&i| original.graphs[i].n() != backbone.graphs[i].n())
    {
        return Err(Error::input(format!("graph {i}: node counts differ")));
    }
    let mut report = dataset_stats(original)?;
    let (lo, hi) = density_range(backbone);
    report.avg_degree_backbone = Some(mean_average_degree(backbone));
    report.density_backbone_min = lo;
    report.density_backbone_max = hi;
    Ok(report)
}

/// Mean of `2 (n_i - c_i) / n_i` over graphs with `n_i >= 1`, where `c_i`
/// counts components: the mean average degree of any spanning forest of
/// each graph.
pub fn spanning_forest_average_degree(b: &DatasetBundle) -> f64 {
    let vals: Vec<f64> = b
        .graphs
        .iter()
        .filter(|g| g.n() > 0)
        .map(|g| 2.0 * (g.n() - g.connected_components().count) as f64 / g.n() as f64)
        .collect();
    if vals.is_empty() {
        0.0
    } else {
        vals.iter().sum::<f64>() / vals.len() as f64
    }
}

impl StatsReport {
    pub const TABLE_HEADER: &'static str =
        "dataset        graphs  n_min  n_max  deg_orig  deg_bb  dens_o_min  dens_o_max  dens_b_min  dens_b_max";

    pub fn table_row(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"));
        format!(
            "{:<14} {:>6}  {:>5}  {:>5}  {:>8.3}  {:>6}  {:>10}  {:>10}  {:>10}  {:>10}",
            self.name,
            self.graph_count,
            self.node_min,
            self.node_max,
            self.avg_degree_original,
            opt(self.avg_degree_backbone),
            opt(self.density_original_min),
            opt(self.density_original_max),
            opt(self.density_backbone_min),
            opt(self.density_backbone_max),
        )
    }
}
