//! Zero-forcing dynamics.
//!
//! A black vertex with exactly one white neighbor forces that neighbor
//! black; repeating until nothing changes yields the derived set. The engine
//! below keeps a white-neighbor counter per vertex and a FIFO of vertices
//! whose counter is one, so a full run costs `O(n + m)`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

/// Default vertex limit for [`minimum_zfs_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 20;

/// Initial black set (the input or leader vertices), kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LeaderSet {
    leaders: Vec<usize>,
}

impl LeaderSet {
    /// Validates that `vertices` are distinct and below `n`.
    pub fn new<I>(n: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut leaders: Vec<usize> = vertices.into_iter().collect();
        leaders.sort_unstable();
        for w in leaders.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateLeader(w[0]));
            }
        }
        if let Some(&last) = leaders.last() {
            if last >= n {
                return Err(Error::VertexOutOfRange { vertex: last, n });
            }
        }
        Ok(Self { leaders })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.leaders
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.leaders.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.leaders.iter().copied()
    }

    pub(crate) fn check_against(&self, g: &Graph) -> Result<()> {
        match self.leaders.last() {
            Some(&last) if last >= g.n() => Err(Error::VertexOutOfRange {
                vertex: last,
                n: g.n(),
            }),
            _ => Ok(()),
        }
    }
}

/// Ordered log of the forces applied and the forcing chains they trace.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForcingRecord {
    /// `(forcer, forced)` in application order.
    pub forces: Vec<(usize, usize)>,
    /// One vertex path per leader, in leader order, each starting at its leader.
    pub chains: Vec<Vec<usize>>,
}

impl ForcingRecord {
    /// Host edges used by some force.
    pub fn force_edges(&self) -> BTreeSet<Edge> {
        self.forces.iter().map(|&(u, v)| edge(u, v)).collect()
    }

    fn from_forces(leaders: &LeaderSet, n: usize, forces: Vec<(usize, usize)>) -> Self {
        let mut chains: Vec<Vec<usize>> = leaders.iter().map(|l| vec![l]).collect();
        let mut tail_of = vec![None; n];
        for (i, l) in leaders.iter().enumerate() {
            tail_of[l] = Some(i);
        }
        for &(u, v) in &forces {
            // Every forcer is black, hence the current tail of exactly one
            // chain, and forces at most once.
            let chain = tail_of[u].take().expect("forcer is a chain tail");
            chains[chain].push(v);
            tail_of[v] = Some(chain);
        }
        Self { forces, chains }
    }
}

/// Result of running zero forcing to its fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroForcingRun {
    /// Final coloring; `true` is black.
    pub black: Vec<bool>,
    pub record: ForcingRecord,
}

impl ZeroForcingRun {
    /// The derived set, ascending.
    pub fn derived(&self) -> Vec<usize> {
        self.black
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
            .collect()
    }

    pub fn zeta(&self) -> usize {
        self.black.iter().filter(|&&b| b).count()
    }

    pub fn is_complete(&self) -> bool {
        self.black.iter().all(|&b| b)
    }
}

/// Incremental zero-forcing state with undo, shared by the single-run
/// entry points and the set searches.
pub(crate) struct ForcingEngine<'g> {
    g: &'g Graph,
    black: Vec<bool>,
    white_neighbors: Vec<usize>,
    black_count: usize,
    queue: VecDeque<usize>,
    colored: Vec<usize>,
    forces: Option<Vec<(usize, usize)>>,
}

impl<'g> ForcingEngine<'g> {
    pub(crate) fn new(g: &'g Graph, log_forces: bool) -> Self {
        Self {
            g,
            black: vec![false; g.n()],
            white_neighbors: g.degrees(),
            black_count: 0,
            queue: VecDeque::new(),
            colored: Vec::new(),
            forces: log_forces.then(Vec::new),
        }
    }

    fn mark(&mut self, v: usize) -> bool {
        if self.black[v] {
            return false;
        }
        self.black[v] = true;
        self.black_count += 1;
        self.colored.push(v);
        for &w in self.g.adj(v) {
            self.white_neighbors[w] -= 1;
        }
        true
    }

    fn color(&mut self, v: usize) {
        if !self.mark(v) {
            return;
        }
        for &w in self.g.adj(v) {
            if self.black[w] && self.white_neighbors[w] == 1 {
                self.queue.push_back(w);
            }
        }
        if self.white_neighbors[v] == 1 {
            self.queue.push_back(v);
        }
    }

    /// Blackens a batch at once; the vertices that become eligible are
    /// queued in ascending id order.
    pub(crate) fn seed(&mut self, vertices: &[usize]) {
        let mut touched = Vec::new();
        for &v in vertices {
            if self.mark(v) {
                touched.push(v);
                touched.extend_from_slice(self.g.adj(v));
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            if self.black[v] && self.white_neighbors[v] == 1 {
                self.queue.push_back(v);
            }
        }
    }

    /// Adds one black vertex.
    pub(crate) fn add(&mut self, v: usize) {
        self.color(v);
    }

    /// Applies the color-change rule until no vertex is eligible.
    pub(crate) fn propagate(&mut self) {
        while let Some(u) = self.queue.pop_front() {
            if self.white_neighbors[u] != 1 {
                continue;
            }
            let target = self
                .g
                .adj(u)
                .iter()
                .copied()
                .find(|&w| !self.black[w])
                .expect("counter says one white neighbor");
            if let Some(log) = self.forces.as_mut() {
                log.push((u, target));
            }
            self.color(target);
        }
    }

    pub(crate) fn black_count(&self) -> usize {
        self.black_count
    }

    pub(crate) fn is_black(&self, v: usize) -> bool {
        self.black[v]
    }

    /// Undo position for [`Self::rollback`].
    pub(crate) fn checkpoint(&self) -> (usize, usize) {
        (self.colored.len(), self.forces.as_ref().map_or(0, Vec::len))
    }

    pub(crate) fn rollback(&mut self, (colored, forces): (usize, usize)) {
        self.queue.clear();
        while self.colored.len() > colored {
            let v = self.colored.pop().expect("len checked");
            self.black[v] = false;
            self.black_count -= 1;
            for &w in self.g.adj(v) {
                self.white_neighbors[w] += 1;
            }
        }
        if let Some(log) = self.forces.as_mut() {
            log.truncate(forces);
        }
    }

    /// Size of the derived set after adding `v`, leaving the state untouched.
    pub(crate) fn trial(&mut self, v: usize) -> usize {
        let mark = self.checkpoint();
        self.add(v);
        self.propagate();
        let zeta = self.black_count;
        self.rollback(mark);
        zeta
    }

    fn finish(self, leaders: &LeaderSet) -> ZeroForcingRun {
        let n = self.g.n();
        let forces = self.forces.unwrap_or_default();
        ZeroForcingRun {
            record: ForcingRecord::from_forces(leaders, n, forces),
            black: self.black,
        }
    }
}

/// Runs zero forcing from `init` and logs the forces applied.
///
/// Eligible vertices are served first-in first-out; among vertices that
/// become eligible together the smaller id goes first, so the record is
/// reproducible.
pub fn apply_zero_forcing(g: &Graph, init: &LeaderSet) -> Result<ZeroForcingRun> {
    init.check_against(g)?;
    let mut engine = ForcingEngine::new(g, true);
    engine.seed(init.as_slice());
    engine.propagate();
    Ok(engine.finish(init))
}

/// Size of the derived set.
pub fn zeta(g: &Graph, init: &LeaderSet) -> Result<usize> {
    init.check_against(g)?;
    let mut engine = ForcingEngine::new(g, false);
    engine.seed(init.as_slice());
    engine.propagate();
    Ok(engine.black_count())
}

/// Whether `init` forces the whole vertex set.
pub fn is_zfs(g: &Graph, init: &LeaderSet) -> Result<bool> {
    Ok(zeta(g, init)? == g.n())
}

/// Greedy zero-forcing set: repeatedly add the white vertex whose addition
/// grows the derived set most (smallest id on ties) until every vertex is
/// black. Always a zero-forcing set; not necessarily a minimum one.
pub fn greedy_zfs(g: &Graph) -> LeaderSet {
    let n = g.n();
    let mut engine = ForcingEngine::new(g, false);
    let mut chosen = Vec::new();
    while engine.black_count() < n {
        let mut best = None;
        let mut best_zeta = 0;
        for v in 0..n {
            if engine.is_black(v) {
                continue;
            }
            let z = engine.trial(v);
            if z > best_zeta {
                best_zeta = z;
                best = Some(v);
            }
        }
        let v = best.expect("a white vertex exists");
        engine.add(v);
        engine.propagate();
        chosen.push(v);
    }
    LeaderSet::new(n, chosen).expect("greedy picks distinct in-range vertices")
}

/// Smallest zero-forcing set by exhaustive search: sizes in increasing
/// order, subsets of one size in lexicographic order.
pub fn minimum_zfs_bruteforce(g: &Graph, max_n: usize) -> Result<LeaderSet> {
    let n = g.n();
    if n > max_n {
        return Err(Error::TooLarge { n, max: max_n });
    }
    let mut engine = ForcingEngine::new(g, false);
    let base = engine.checkpoint();
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            engine.seed(&combo);
            engine.propagate();
            let full = engine.black_count() == n;
            engine.rollback(base);
            if full {
                return LeaderSet::new(n, combo);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set is always a zero-forcing set")
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}
