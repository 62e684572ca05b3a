// Runs the colour-change rule on a few small graphs and compares the
// greedy forcing set with the exhaustive minimum.

use learning_backbone::generators::{grid, path, petersen, star};
use learning_backbone::zero_forcing::{apply_zero_forcing, greedy_zfs, minimum_zfs_bruteforce};
use learning_backbone::LeaderSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Star with centre 0: two black leaves let leaf 1 force the centre,
    // which then forces the last leaf.
    let g = star(4);
    let run = apply_zero_forcing(&g, &LeaderSet::new(4, [1, 2])?)?;
    println!("star, leaders {{1, 2}}: forces {:?}", run.record.forces);
    println!(
        "  chains {:?}, derived {:?}",
        run.record.chains,
        run.derived()
    );

    let p = path(6);
    let end = apply_zero_forcing(&p, &LeaderSet::new(6, [0])?)?;
    let middle = apply_zero_forcing(&p, &LeaderSet::new(6, [2])?)?;
    println!(
        "P6 from an end colours {} vertices, from the middle {}",
        end.zeta(),
        middle.zeta()
    );

    for (name, g) in [("3x3 grid", grid(3, 3)), ("Petersen", petersen())] {
        let greedy = greedy_zfs(&g);
        let best = minimum_zfs_bruteforce(&g, 12)?;
        println!(
            "{name}: greedy {:?} ({}), minimum {:?} ({})",
            greedy.as_slice(),
            greedy.len(),
            best.as_slice(),
            best.len()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
