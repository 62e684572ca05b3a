//! Learning backbones: sparse spanning subgraphs of a host graph.
//!
//! * [`zfs_backbone`] keeps the force edges of a zero-forcing run from a
//!   greedy zero-forcing set (a family of vertex-disjoint paths, one per
//!   leader) and joins those paths into one tree per host component with
//!   host edges.
//! * [`distance_backbone`] keeps a shortest-path tree per leader, so every
//!   leader-to-vertex distance survives.
//! * [`random_spanning_tree`] is the seeded Kruskal baseline.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};
use crate::union_find::UnionFind;
use crate::zero_forcing::{apply_zero_forcing, greedy_zfs, zeta, LeaderSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackboneMethod {
    Zfs,
    /// Union of per-leader shortest-path trees.
    Distance,
    /// Spanning forest that keeps the first leader's shortest-path tree.
    DistanceTree,
    RandomTree,
}

impl BackboneMethod {
    /// Whether the output is always a spanning forest of the host.
    pub fn is_tree(self) -> bool {
        !matches!(self, BackboneMethod::Distance)
    }
}

impl fmt::Display for BackboneMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackboneMethod::Zfs => "zfs",
            BackboneMethod::Distance => "distance",
            BackboneMethod::DistanceTree => "distance-tree",
            BackboneMethod::RandomTree => "random-tree",
        })
    }
}

/// A leader set plus the host edges retained by one construction.
#[derive(Debug, Clone)]
pub struct Backbone<'g> {
    pub host: &'g Graph,
    pub leaders: LeaderSet,
    pub kept_edges: BTreeSet<Edge>,
    /// Edges used by a force in the zero-forcing run (empty for the other
    /// methods). Always a subset of `kept_edges`.
    pub force_edges: BTreeSet<Edge>,
    pub method: BackboneMethod,
}

/// A broken backbone invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EdgeOutsideHost(Edge),
    NotSpanningForest,
    MissingForceEdge(Edge),
    Uncolored(usize),
    DistanceChanged {
        leader: usize,
        vertex: usize,
        host: Option<usize>,
        backbone: Option<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeOutsideHost((u, v)) => write!(f, "edge ({u}, {v}) not in host"),
            Violation::NotSpanningForest => f.write_str("not a spanning forest of the host"),
            Violation::MissingForceEdge((u, v)) => write!(f, "force edge ({u}, {v}) dropped"),
            Violation::Uncolored(v) => write!(f, "vertex {v} not forced from the leaders"),
            Violation::DistanceChanged {
                leader,
                vertex,
                host,
                backbone,
            } => write!(
                f,
                "d({leader}, {vertex}) changed from {host:?} to {backbone:?}"
            ),
        }
    }
}

impl<'g> Backbone<'g> {
    /// The backbone as a standalone graph on the host's vertex set.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edge_set(self.host.n(), self.kept_edges.clone())
    }

    pub fn edge_count(&self) -> usize {
        self.kept_edges.len()
    }

    /// Checks every invariant that applies to this backbone's method.
    pub fn violations(&self) -> Vec<Violation> {
        let host = self.host;
        let mut out: Vec<Violation> = self
            .kept_edges
            .iter()
            .filter(|&&(u, v)| !host.contains_edge(u, v))
            .map(|&e| Violation::EdgeOutsideHost(e))
            .collect();
        if !out.is_empty() {
            return out;
        }
        if self.method.is_tree() && !host.is_spanning_forest(&self.kept_edges).unwrap_or(false) {
            out.push(Violation::NotSpanningForest);
        }
        let graph = self.to_graph();
        match self.method {
            BackboneMethod::Zfs => {
                out.extend(
                    self.force_edges
                        .difference(&self.kept_edges)
                        .map(|&e| Violation::MissingForceEdge(e)),
                );
                out.extend(uncolored_in_led_components(host, &graph, &self.leaders));
            }
            BackboneMethod::Distance => {
                out.extend(distance_changes(host, &graph, &self.leaders));
            }
            BackboneMethod::DistanceTree | BackboneMethod::RandomTree => {}
        }
        out
    }
}

/// Vertices whose host component holds a leader but which the zero-forcing
/// run on `sub` leaves white.
fn uncolored_in_led_components(host: &Graph, sub: &Graph, leaders: &LeaderSet) -> Vec<Violation> {
    let Ok(run) = apply_zero_forcing(sub, leaders) else {
        return Vec::new();
    };
    let cc = host.connected_components();
    let mut led = vec![false; cc.count];
    for l in leaders.iter() {
        led[cc.labels[l]] = true;
    }
    (0..host.n())
        .filter(|&v| led[cc.labels[v]] && !run.black[v])
        .map(Violation::Uncolored)
        .collect()
}

fn distance_changes(host: &Graph, sub: &Graph, leaders: &LeaderSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for leader in leaders.iter() {
        let (Ok(a), Ok(b)) = (host.bfs_distances(leader), sub.bfs_distances(leader)) else {
            continue;
        };
        for vertex in 0..host.n() {
            if a.dist[vertex] != b.dist[vertex] {
                out.push(Violation::DistanceChanged {
                    leader,
                    vertex,
                    host: a.dist[vertex],
                    backbone: b.dist[vertex],
                });
            }
        }
    }
    out
}

/// Kruskal pass: accepts each edge that joins two different trees.
fn extend_forest<I>(uf: &mut UnionFind, kept: &mut BTreeSet<Edge>, candidates: I)
where
    I: IntoIterator<Item = Edge>,
{
    for (u, v) in candidates {
        if uf.union(u, v) {
            kept.insert(edge(u, v));
        }
    }
}

/// Zero-forcing-set backbone from a greedy zero-forcing set.
///
/// For a connected host the result is a spanning tree: `n - |leaders|`
/// force edges plus `|leaders| - 1` connectors. Disconnected hosts get one
/// tree per component.
pub fn zfs_backbone(g: &Graph) -> Backbone<'_> {
    let leaders = greedy_zfs(g);
    zfs_backbone_with_leaders(g, leaders).expect("greedy leaders are valid")
}

/// Zero-forcing backbone for a caller-chosen leader set. Connectors are the
/// host edges, scanned in ascending order, that merge two forcing chains.
pub fn zfs_backbone_with_leaders(g: &Graph, leaders: LeaderSet) -> Result<Backbone<'_>> {
    let run = apply_zero_forcing(g, &leaders)?;
    let force_edges = run.record.force_edges();
    let mut uf = UnionFind::new(g.n());
    let mut kept = BTreeSet::new();
    extend_forest(&mut uf, &mut kept, force_edges.iter().copied());
    extend_forest(&mut uf, &mut kept, g.edges());
    Ok(Backbone {
        host: g,
        leaders,
        kept_edges: kept,
        force_edges,
        method: BackboneMethod::Zfs,
    })
}

/// Shortest-path tree edges from `root`: each reachable non-root vertex at
/// distance `d` is attached to its smallest-id neighbor at distance `d - 1`.
pub fn bfs_tree_edges(g: &Graph, root: usize) -> Result<Vec<Edge>> {
    let dist = g.bfs_distances(root)?;
    let mut out = Vec::new();
    for v in 0..g.n() {
        let Some(d) = dist.dist[v] else { continue };
        if d == 0 {
            continue;
        }
        let parent = g
            .adj(v)
            .iter()
            .copied()
            .find(|&w| dist.dist[w] == Some(d - 1))
            .expect("a reachable vertex has a BFS parent");
        out.push(edge(parent, v));
    }
    Ok(out)
}

/// Union of the shortest-path trees rooted at each leader. Every
/// leader-to-vertex distance (including unreachability) equals the host's;
/// at most `|leaders| (n - 1)` edges.
pub fn distance_backbone<'g>(g: &'g Graph, leaders: &LeaderSet) -> Result<Backbone<'g>> {
    if leaders.is_empty() {
        return Err(Error::input("distance backbone needs at least one leader"));
    }
    leaders.check_against(g)?;
    let mut kept = BTreeSet::new();
    for l in leaders.iter() {
        kept.extend(bfs_tree_edges(g, l)?);
    }
    Ok(Backbone {
        host: g,
        leaders: leaders.clone(),
        kept_edges: kept,
        force_edges: BTreeSet::new(),
        method: BackboneMethod::Distance,
    })
}

/// Spanning-forest variant of [`distance_backbone`]: Kruskal over the
/// leaders' shortest-path-tree edges (in leader order) and then the rest of
/// the host. The first leader's tree goes in whole, so its distances are
/// exact; later leaders' distances may stretch.
pub fn distance_tree_backbone<'g>(g: &'g Graph, leaders: &LeaderSet) -> Result<Backbone<'g>> {
    if leaders.is_empty() {
        return Err(Error::input("distance backbone needs at least one leader"));
    }
    leaders.check_against(g)?;
    let mut uf = UnionFind::new(g.n());
    let mut kept = BTreeSet::new();
    for l in leaders.iter() {
        extend_forest(&mut uf, &mut kept, bfs_tree_edges(g, l)?);
    }
    extend_forest(&mut uf, &mut kept, g.edges());
    Ok(Backbone {
        host: g,
        leaders: leaders.clone(),
        kept_edges: kept,
        force_edges: BTreeSet::new(),
        method: BackboneMethod::DistanceTree,
    })
}

/// Kruskal with uniformly random edge priorities: the edge list is shuffled
/// with a seeded ChaCha stream and fed through union-find.
pub fn random_spanning_tree(g: &Graph, seed: u64) -> Backbone<'_> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Edge> = g.edges().collect();
    order.shuffle(&mut rng);
    let mut uf = UnionFind::new(g.n());
    let mut kept = BTreeSet::new();
    extend_forest(&mut uf, &mut kept, order);
    Backbone {
        host: g,
        leaders: LeaderSet::empty(),
        kept_edges: kept,
        force_edges: BTreeSet::new(),
        method: BackboneMethod::RandomTree,
    }
}

/// Outcome of checking `zeta(Ĝ, leaders) >= zeta(G, leaders)` over edge
/// sets `force_edges ⊆ Ê ⊆ E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub host_zeta: usize,
    /// `(edges in Ê, zeta of (V, Ê))` per trial.
    pub trials: Vec<(usize, usize)>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> impl Iterator<Item = bool> + '_ {
        self.trials.iter().map(move |&(_, z)| z >= self.host_zeta)
    }

    pub fn all_passed(&self) -> bool {
        self.passed().all(|ok| ok)
    }

    pub fn failures(&self) -> usize {
        self.passed().filter(|ok| !ok).count()
    }
}

fn check_zfs_backbone_host(g: &Graph, b: &Backbone<'_>) -> Result<()> {
    if b.method != BackboneMethod::Zfs {
        return Err(Error::input(format!(
            "monotonicity applies to zfs backbones, got {}",
            b.method
        )));
    }
    if !std::ptr::eq(g, b.host) && g != b.host {
        return Err(Error::input("backbone was built from a different host"));
    }
    b.leaders.check_against(g)
}

/// Samples `trials` edge sets between the force edges and the full host
/// (each optional edge kept with probability 1/2) and records the derived
/// set size of each.
pub fn verify_zfs_backbone_monotonicity(
    g: &Graph,
    b: &Backbone<'_>,
    trials: usize,
    seed: u64,
) -> Result<MonotonicityReport> {
    check_zfs_backbone_host(g, b)?;
    let host_zeta = zeta(g, &b.leaders)?;
    let optional: Vec<Edge> = g.edges().filter(|e| !b.force_edges.contains(e)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let chosen = b
            .force_edges
            .iter()
            .copied()
            .chain(optional.iter().copied().filter(|_| rng.gen_bool(0.5)));
        let sub = g.spanning_subgraph(chosen)?;
        out.push((sub.edge_count(), zeta(&sub, &b.leaders)?));
    }
    Ok(MonotonicityReport {
        host_zeta,
        trials: out,
    })
}

/// Every edge set between the force edges and the host. Refuses when more
/// than `max_optional` host edges lie outside the force edges.
pub fn verify_zfs_backbone_monotonicity_exhaustive(
    g: &Graph,
    b: &Backbone<'_>,
    max_optional: usize,
) -> Result<MonotonicityReport> {
    check_zfs_backbone_host(g, b)?;
    let host_zeta = zeta(g, &b.leaders)?;
    let optional: Vec<Edge> = g.edges().filter(|e| !b.force_edges.contains(e)).collect();
    if optional.len() > max_optional {
        return Err(Error::TooLarge {
            n: optional.len(),
            max: max_optional,
        });
    }
    let mut out = Vec::with_capacity(1 << optional.len());
    for mask in 0u64..(1u64 << optional.len()) {
        let chosen = b.force_edges.iter().copied().chain(
            optional
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        );
        let sub = g.spanning_subgraph(chosen)?;
        out.push((sub.edge_count(), zeta(&sub, &b.leaders)?));
    }
    Ok(MonotonicityReport {
        host_zeta,
        trials: out,
    })
}
