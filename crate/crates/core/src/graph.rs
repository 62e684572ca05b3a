//! Simple undirected graphs on dense vertex ids and the structural
//! primitives the backbone constructions are built from.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// An undirected edge stored with its smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalizes an unordered vertex pair to `(min, max)`.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph with vertices `0..n`.
///
/// Adjacency is kept twice: a sorted neighbor list per vertex (iteration is
/// always in ascending id order) and an ordered edge set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from unordered pairs. Repeated pairs (in either
    /// direction) collapse to one edge; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = BTreeSet::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.insert(edge(u, v));
        }
        Ok(Self::from_edge_set(n, edges))
    }

    /// Caller guarantees every edge is normalized, loop-free and in range.
    pub(crate) fn from_edge_set(n: usize, edges: BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { adj, edges }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&edge(u, v))
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.n(),
            })
        }
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> Result<&[usize]> {
        self.check_vertex(u)?;
        Ok(&self.adj[u])
    }

    /// Unchecked neighbor slice for hot loops inside the crate.
    #[inline]
    pub(crate) fn adj(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> Result<usize> {
        Ok(self.neighbors(u)?.len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `2|E| / n`.
    pub fn average_degree(&self) -> Result<f64> {
        if self.n() == 0 {
            return Err(Error::input("average degree of the empty graph"));
        }
        Ok(2.0 * self.edge_count() as f64 / self.n() as f64)
    }

    /// `2|E| / (n (n - 1))`.
    pub fn density(&self) -> Result<f64> {
        let n = self.n();
        if n < 2 {
            return Err(Error::input(format!("density needs n >= 2, got {n}")));
        }
        Ok(2.0 * self.edge_count() as f64 / (n * (n - 1)) as f64)
    }

    /// Spanning subgraph `(V, edges)`; every edge must belong to `self`.
    pub fn spanning_subgraph<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut kept = BTreeSet::new();
        for (u, v) in edges {
            let e = edge(u, v);
            if !self.edges.contains(&e) {
                return Err(Error::EdgeNotInHost(e.0, e.1));
            }
            kept.insert(e);
        }
        Ok(Graph::from_edge_set(self.n(), kept))
    }

    /// Hop distances from `source` by breadth-first search.
    pub fn bfs_distances(&self, source: usize) -> Result<DistanceMap> {
        self.check_vertex(source)?;
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(DistanceMap { source, dist })
    }

    pub fn connected_components(&self) -> ComponentLabeling {
        let n = self.n();
        let mut labels = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if labels[v] == usize::MAX {
                        labels[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        ComponentLabeling { labels, count }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().count <= 1
    }

    /// Whether `(V, subset)` is acyclic with exactly one tree spanning each
    /// connected component of `self`.
    pub fn is_spanning_forest<'a, I>(&self, subset: I) -> Result<bool>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut uf = UnionFind::new(self.n());
        let mut acyclic = true;
        let mut seen = BTreeSet::new();
        for &(u, v) in subset {
            let e = edge(u, v);
            if !self.edges.contains(&e) {
                return Err(Error::EdgeNotInHost(e.0, e.1));
            }
            if !seen.insert(e) {
                continue;
            }
            if !uf.union(e.0, e.1) {
                acyclic = false;
            }
        }
        // An acyclic subgraph of `self` has at least as many components as
        // `self`; equality means each host component is spanned by one tree.
        Ok(acyclic && uf.count() == self.connected_components().count)
    }

    /// Exact number of spanning trees via a fraction-free (Bareiss)
    /// determinant of the Laplacian with vertex 0's row and column removed.
    /// Disconnected graphs have none and return 0.
    pub fn spanning_tree_count(&self) -> BigInt {
        let n = self.n();
        if n == 0 || !self.is_connected() {
            return BigInt::zero();
        }
        let size = n - 1;
        let mut lap = vec![vec![BigInt::zero(); size]; size];
        for u in 1..n {
            lap[u - 1][u - 1] = BigInt::from(self.adj[u].len());
            for &v in &self.adj[u] {
                if v != 0 {
                    lap[u - 1][v - 1] = BigInt::from(-1);
                }
            }
        }
        bareiss_determinant(lap)
    }

    /// Closed-form bound `((2m - Δ - δ - 1) / (n - 3))^(n - 3)` on the number
    /// of spanning trees, defined for `n > 3`. It is not a valid bound for
    /// every graph (complete graphs exceed it, e.g. K4 has 16 trees against
    /// 5.0), so treat it as an estimate.
    pub fn spanning_tree_upper_bound(&self) -> Result<f64> {
        let n = self.n();
        if n <= 3 {
            return Err(Error::input(format!(
                "spanning-tree bound needs n > 3, got {n}"
            )));
        }
        let m = self.edge_count() as f64;
        let base =
            (2.0 * m - self.max_degree() as f64 - self.min_degree() as f64 - 1.0) / (n - 3) as f64;
        Ok(base.powi((n - 3) as i32))
    }
}

/// Determinant of a square integer matrix by Bareiss elimination. Every
/// intermediate division is exact.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let size = a.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Hop distances from one source; `None` marks unreachable vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
}

impl DistanceMap {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist.get(v).copied().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub labels: Vec<usize>,
    pub count: usize,
}

impl ComponentLabeling {
    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }
}
