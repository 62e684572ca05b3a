// Samples system matrices with a graph's zero pattern and estimates the
// rank of the controllability matrix, next to the zero-forcing bound.

use learning_backbone::controllability::{
    controllability_matrix, generic_rank, numeric_rank, sample_system, DEFAULT_RANK_TOL,
};
use learning_backbone::generators::{cycle, path, star};
use learning_backbone::LeaderSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("P5 from an end", path(5), vec![0]),
        ("P5 from the middle", path(5), vec![2]),
        ("C6, one leader", cycle(6), vec![0]),
        ("C6, two neighbours", cycle(6), vec![0, 1]),
        ("star, two leaves", star(5), vec![1, 2]),
    ];
    println!("{:<20} {:>4} {:>5} {:>4}", "graph", "n", "zeta", "rank");
    for (name, g, l) in cases {
        let leaders = LeaderSet::new(g.n(), l)?;
        let est = generic_rank(&g, &leaders, 10, 42, DEFAULT_RANK_TOL)?;
        println!("{name:<20} {:>4} {:>5} {:>4}", g.n(), est.zeta, est.rank);
    }

    // One explicit sample: the Krylov matrix and its SVD rank.
    let g = path(4);
    let s = sample_system(&g, &LeaderSet::new(4, [0])?, 3)?;
    let k = controllability_matrix(&s);
    println!(
        "P4 sample, [H MH M^2H M^3H] has rank {}:{}",
        numeric_rank(&k, DEFAULT_RANK_TOL)?,
        k
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
