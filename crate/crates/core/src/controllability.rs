//! Numerical checks for strong structural controllability.
//!
//! The networked system is `x' = M x + H u` with `M` drawn from the
//! symmetric matrices whose off-diagonal zero pattern is the graph's
//! non-edges, and `H` the 0/1 indicator of the leaders. The system is
//! controllable when `[H, MH, ..., M^(n-1) H]` has rank `n`. Nothing here
//! simulates the dynamics.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seeding::derive_seed;
use crate::zero_forcing::{zeta, LeaderSet};

pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Edge weights are drawn from this range (strictly positive, so never zero).
pub const EDGE_WEIGHT_RANGE: (f64, f64) = (0.5, 1.5);
/// Diagonal entries are unconstrained by the pattern; drawn from this range.
pub const DIAGONAL_RANGE: (f64, f64) = (-1.0, 1.0);

/// One system matrix from the graph's pattern family with its input matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSample {
    pub m: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub seed: u64,
    pub weight_range: (f64, f64),
}

impl SystemSample {
    pub fn n(&self) -> usize {
        self.m.nrows()
    }
}

/// Draws `M` (diagonal first in vertex order, then edges in ascending
/// order) and builds `H` with column `j` the indicator of leader `j`.
pub fn sample_system(g: &Graph, leaders: &LeaderSet, seed: u64) -> Result<SystemSample> {
    leaders.check_against(g)?;
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = rng.gen_range(DIAGONAL_RANGE.0..=DIAGONAL_RANGE.1);
    }
    for (u, v) in g.edges() {
        let w = rng.gen_range(EDGE_WEIGHT_RANGE.0..=EDGE_WEIGHT_RANGE.1);
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    let mut h = DMatrix::zeros(n, leaders.len());
    for (j, l) in leaders.iter().enumerate() {
        h[(l, j)] = 1.0;
    }
    Ok(SystemSample {
        m,
        h,
        seed,
        weight_range: EDGE_WEIGHT_RANGE,
    })
}

/// `[H, MH, M²H, ..., M^(n-1)H]`, an `n × n·m` matrix.
pub fn controllability_matrix(s: &SystemSample) -> DMatrix<f64> {
    let n = s.n();
    let k = s.h.ncols();
    let mut out = DMatrix::zeros(n, n * k);
    let mut block = s.h.clone();
    for p in 0..n {
        out.view_mut((0, p * k), (n, k)).copy_from(&block);
        if p + 1 < n {
            block = &s.m * &block;
        }
    }
    out
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!(
            "rank tolerance must be positive, got {rel_tol}"
        )))
    }
}

/// Count of singular values above `rel_tol` times the largest one.
pub fn numeric_rank(a: &DMatrix<f64>, rel_tol: f64) -> Result<usize> {
    check_tol(rel_tol)?;
    if a.is_empty() {
        return Ok(0);
    }
    let sv = a.clone().svd(false, false).singular_values;
    let top = sv.max();
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rel_tol * top).count())
}

fn spectral_norm(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        0.0
    } else {
        a.clone().svd(false, false).singular_values.max()
    }
}

/// Dimension of the controllable subspace, i.e. the rank of the
/// controllability matrix, via the orthogonal staircase: grow an orthonormal
/// basis of `span{H, MH, ...}` one block at a time, keeping the directions
/// of each new block (after projecting out the current basis twice) whose
/// singular values exceed `rel_tol` times the block's scale (`‖H‖` for the
/// first block, `‖M‖` afterwards).
///
/// Unlike the explicit matrix, whose columns grow like `‖M‖^k`, every block
/// here has orthonormal inputs, so the threshold stays meaningful for large
/// `n`.
pub fn controllable_dimension(s: &SystemSample, rel_tol: f64) -> Result<usize> {
    check_tol(rel_tol)?;
    let n = s.n();
    if n == 0 || s.h.ncols() == 0 {
        return Ok(0);
    }
    let m_norm = spectral_norm(&s.m);
    let mut scale = spectral_norm(&s.h);
    let mut basis = DMatrix::<f64>::zeros(n, 0);
    let mut block = s.h.clone();
    loop {
        if basis.ncols() > 0 {
            for _ in 0..2 {
                let proj = &basis * (basis.transpose() * &block);
                block -= proj;
            }
        }
        let svd = block.svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let keep: Vec<usize> = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|&(_, &sv)| sv > rel_tol * scale)
            .map(|(i, _)| i)
            .collect();
        if keep.is_empty() {
            break;
        }
        let fresh = u.select_columns(&keep);
        let r = basis.ncols();
        basis = basis.insert_columns(r, fresh.ncols(), 0.0);
        basis.view_mut((0, r), (n, fresh.ncols())).copy_from(&fresh);
        if basis.ncols() >= n {
            break;
        }
        block = &s.m * &fresh;
        scale = m_norm;
    }
    Ok(basis.ncols().min(n))
}

/// Generic-rank estimate over sampled system matrices, with the zero
/// forcing lower bound alongside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEstimate {
    /// Largest rank over the trials.
    pub rank: usize,
    pub trials: usize,
    pub tolerance: f64,
    pub per_trial_ranks: Vec<usize>,
    /// Size of the derived set from the same leaders.
    pub zeta: usize,
}

impl RankEstimate {
    /// The derived-set size lower-bounds the rank for every admissible `M`,
    /// so a rank below it means numerical trouble.
    pub fn violates_zeta_bound(&self) -> bool {
        self.rank < self.zeta
    }
}

/// Maximum controllable dimension over `trials` sampled systems. Trial `t`
/// uses the sample seeded by `derive_seed(seed, t)`.
pub fn generic_rank(
    g: &Graph,
    leaders: &LeaderSet,
    trials: usize,
    seed: u64,
    rel_tol: f64,
) -> Result<RankEstimate> {
    if trials == 0 {
        return Err(Error::input("generic rank needs at least one trial"));
    }
    check_tol(rel_tol)?;
    let z = zeta(g, leaders)?;
    let per_trial_ranks = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let s = sample_system(g, leaders, derive_seed(seed, t))?;
            controllable_dimension(&s, rel_tol)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankEstimate {
        rank: per_trial_ranks.iter().copied().max().unwrap_or(0),
        trials,
        tolerance: rel_tol,
        per_trial_ranks,
        zeta: z,
    })
}

/// Distance-to-leader vectors: row `i` holds `d(ℓ_j, v_i)` for each leader
/// `ℓ_j`, `None` when unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlMatrix {
    pub leaders: Vec<usize>,
    pub rows: Vec<Vec<Option<usize>>>,
}

impl DlMatrix {
    pub fn row(&self, v: usize) -> &[Option<usize>] {
        &self.rows[v]
    }
}

pub fn dl_vectors(g: &Graph, leaders: &LeaderSet) -> Result<DlMatrix> {
    if leaders.is_empty() {
        return Err(Error::input("distance-to-leader vectors need a leader"));
    }
    leaders.check_against(g)?;
    let maps = leaders
        .iter()
        .map(|l| g.bfs_distances(l))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..g.n())
        .map(|v| maps.iter().map(|d| d.dist[v]).collect())
        .collect();
    Ok(DlMatrix {
        leaders: leaders.as_slice().to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path, star};

    fn leaders(n: usize, vs: &[usize]) -> LeaderSet {
        LeaderSet::new(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn sample_pattern() {
        let s = sample_system(&Graph::new(3), &leaders(3, &[1]), 4).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(s.m[(i, j)], 0.0);
                }
            }
        }
        let p2 = path(2);
        let s = sample_system(&p2, &leaders(2, &[0]), 9).unwrap();
        assert!(s.m[(0, 1)] != 0.0);
        assert_eq!(s.m[(0, 1)].to_bits(), s.m[(1, 0)].to_bits());
        assert_eq!(s.h, DMatrix::from_column_slice(2, 1, &[1.0, 0.0]));
        assert_eq!(s, sample_system(&p2, &leaders(2, &[0]), 9).unwrap());
    }

    #[test]
    fn krylov_blocks() {
        let s = SystemSample {
            m: DMatrix::from_element(1, 1, 3.5),
            h: DMatrix::from_element(1, 1, 1.0),
            seed: 0,
            weight_range: EDGE_WEIGHT_RANGE,
        };
        assert_eq!(controllability_matrix(&s), DMatrix::from_element(1, 1, 1.0));

        let s = sample_system(&path(2), &leaders(2, &[0]), 1).unwrap();
        let c = controllability_matrix(&s);
        assert_eq!(c.shape(), (2, 2));
        assert_eq!(c[(0, 0)], 1.0);
        assert_eq!(c[(1, 0)], 0.0);
        assert_eq!(c[(0, 1)], s.m[(0, 0)]);
        assert_eq!(c[(1, 1)], s.m[(1, 0)]);
    }

    #[test]
    fn rank_basics() {
        assert_eq!(numeric_rank(&DMatrix::identity(4, 4), 1e-9).unwrap(), 4);
        let u = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, 3.0]);
        let v = DMatrix::from_column_slice(4, 1, &[1.0, -1.0, 0.5, 2.0]);
        assert_eq!(numeric_rank(&(&u * v.transpose()), 1e-9).unwrap(), 1);
        assert_eq!(numeric_rank(&DMatrix::zeros(0, 3), 1e-9).unwrap(), 0);
        assert!(numeric_rank(&DMatrix::identity(2, 2), 0.0).is_err());

        let s = sample_system(&path(3), &leaders(3, &[0]), 5).unwrap();
        assert_eq!(numeric_rank(&controllability_matrix(&s), 1e-9).unwrap(), 3);
        assert_eq!(controllable_dimension(&s, 1e-9).unwrap(), 3);
    }

    #[test]
    fn generic_rank_examples() {
        let g = cycle(5);
        let all = leaders(5, &[0, 1, 2, 3, 4]);
        assert_eq!(generic_rank(&g, &all, 3, 0, 1e-9).unwrap().rank, 5);

        let est = generic_rank(&cycle(4), &leaders(4, &[0]), 10, 0, 1e-9).unwrap();
        assert_eq!(est.zeta, 1);
        assert!(!est.violates_zeta_bound());
        assert_eq!(est.per_trial_ranks.len(), 10);
        assert!(generic_rank(&g, &all, 0, 0, 1e-9).is_err());
    }

    #[test]
    fn dl_examples() {
        let d = dl_vectors(&path(3), &leaders(3, &[0])).unwrap();
        assert_eq!(d.rows, vec![vec![Some(0)], vec![Some(1)], vec![Some(2)]]);
        let d = dl_vectors(&star(4), &leaders(4, &[1, 3])).unwrap();
        assert_eq!(d.row(0), &[Some(1), Some(1)]);
        assert!(dl_vectors(&star(4), &LeaderSet::empty()).is_err());
        let two = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(dl_vectors(&two, &leaders(3, &[0])).unwrap().row(2), &[None]);
    }
}
