// Builds the zero-forcing backbone of a random connected graph and checks
// the properties that make it useful: it is a spanning tree, the leaders
// still colour everything, and adding host edges back never shrinks the
// derived set.

use learning_backbone::backbone::{verify_zfs_backbone_monotonicity, zfs_backbone};
use learning_backbone::controllability::{generic_rank, DEFAULT_RANK_TOL};
use learning_backbone::generators::connected_gnp;
use learning_backbone::zero_forcing::apply_zero_forcing;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = connected_gnp(16, 0.3, &mut rng);
    let b = zfs_backbone(&g);
    println!("host: n = {}, m = {}", g.n(), g.edge_count());
    println!("leaders {:?}", b.leaders.as_slice());
    println!(
        "backbone keeps {} edges ({} from forces)",
        b.edge_count(),
        b.force_edges.len()
    );

    let tree = b.to_graph();
    let run = apply_zero_forcing(&tree, &b.leaders)?;
    println!("leaders colour the backbone: {}", run.is_complete());
    assert!(b.violations().is_empty());

    let report = verify_zfs_backbone_monotonicity(&g, &b, 20, 5)?;
    println!(
        "20 intermediate graphs, derived set never below {}: {}",
        report.host_zeta,
        report.all_passed()
    );

    let rank = generic_rank(&tree, &b.leaders, 5, 1, DEFAULT_RANK_TOL)?;
    println!(
        "controllable dimension of the backbone: {} of {}",
        rank.rank,
        g.n()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
