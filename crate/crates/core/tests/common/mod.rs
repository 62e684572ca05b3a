//! Reference implementations used only by the integration tests. They are
//! written for obviousness, not speed, and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use learning_backbone::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// All-pairs shortest paths by Floyd–Warshall over the raw edge list.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<Option<usize>>> {
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for &(u, v) in edges {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let r = find(p, p[x]);
        p[x] = r;
    }
    p[x]
}

/// True when `edges` has no cycle (checked by naive root chasing).
pub fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut p: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (find(&mut p, u), find(&mut p, v));
        if a == b {
            return false;
        }
        p[a] = b;
    }
    true
}

/// Counts spanning trees by trying every `(n-1)`-subset of the edges.
pub fn enumerate_spanning_trees(n: usize, edges: &[(usize, usize)]) -> u64 {
    if n <= 1 {
        return 1;
    }
    let m = edges.len();
    let k = n - 1;
    if m < k {
        return 0;
    }
    let mut count = 0;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let pick: Vec<_> = idx.iter().map(|&i| edges[i]).collect();
        if acyclic(n, &pick) {
            count += 1;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Matrix-tree theorem with exact rationals: delete the last row and column
/// of the Laplacian, eliminate with the largest-magnitude pivot.
pub fn rational_tree_count(n: usize, edges: &[(usize, usize)]) -> BigInt {
    if n <= 1 {
        return BigInt::one();
    }
    let k = n - 1;
    let mut a = vec![vec![BigRational::zero(); k]; k];
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    for &(u, v) in edges {
        for (x, y) in [(u, v), (v, u)] {
            if x < k {
                a[x][x] += int(1);
                if y < k {
                    a[x][y] -= int(1);
                }
            }
        }
    }
    let mut det = int(1);
    for c in 0..k {
        let piv = (c..k)
            .filter(|&r| !a[r][c].is_zero())
            .max_by(|&r, &s| abs(&a[r][c]).cmp(&abs(&a[s][c])));
        let Some(p) = piv else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..k {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() / a[c][c].clone();
            let pivot_row = a[c].clone();
            for (x, p) in a[r].iter_mut().zip(pivot_row).skip(c) {
                *x -= f.clone() * p;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

fn abs(x: &BigRational) -> BigRational {
    if x < &BigRational::zero() {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Applies the colour-change rule in a random order: at every step, list
/// all currently valid forces and pick one uniformly.
pub fn random_order_closure<R: Rng>(
    n: usize,
    edges: &[(usize, usize)],
    init: &[usize],
    rng: &mut R,
) -> BTreeSet<usize> {
    let mut nbr = vec![Vec::new(); n];
    for &(u, v) in edges {
        nbr[u].push(v);
        nbr[v].push(u);
    }
    let mut black: BTreeSet<usize> = init.iter().copied().collect();
    loop {
        let moves: Vec<usize> = (0..n)
            .filter(|u| black.contains(u))
            .filter_map(|u| {
                let white: Vec<_> = nbr[u].iter().filter(|w| !black.contains(w)).collect();
                (white.len() == 1).then(|| *white[0])
            })
            .collect();
        match moves.choose(rng) {
            Some(&w) => {
                black.insert(w);
            }
            None => return black,
        }
    }
}

/// `[H, MH, ...]` assembled one column at a time from plain vectors, block
/// `p` holding `M^p` applied to each leader indicator.
pub fn naive_krylov(m: &[Vec<f64>], leaders: &[usize]) -> Vec<Vec<f64>> {
    let n = m.len();
    let mut cols = Vec::new();
    for &l in leaders {
        let mut v = vec![0.0; n];
        v[l] = 1.0;
        cols.push(v);
    }
    for p in 1..n {
        for j in 0..leaders.len() {
            let prev = &cols[(p - 1) * leaders.len() + j];
            let next: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|k| m[i][k] * prev[k]).sum())
                .collect();
            cols.push(next);
        }
    }
    cols
}

/// Random graph on `n` vertices: each pair kept with probability `p`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, pairs).unwrap()
}

/// Connected random graph: a random labelled tree plus extra `p`-edges.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, pairs.into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

/// Every graph on `n` labelled vertices (2^(n choose 2) of them).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let chosen = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, chosen).unwrap()
    })
}
