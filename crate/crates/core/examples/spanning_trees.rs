// Exact spanning-tree counts by the matrix-tree theorem, with the
// closed-form estimate `((2m - Δ - δ - 1) / (n - 3))^(n - 3)`.

use learning_backbone::generators::{complete, cycle, grid, petersen};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("C5", cycle(5)),
        ("C12", cycle(12)),
        ("K4", complete(4)),
        ("K7", complete(7)),
        ("3x3 grid", grid(3, 3)),
        ("Petersen", petersen()),
        ("K12", complete(12)),
    ];
    println!(
        "{:<10} {:>16} {:>14}",
        "graph", "spanning trees", "estimate"
    );
    for (name, g) in graphs {
        let estimate = g
            .spanning_tree_upper_bound()
            .map(|b| format!("{b:.2}"))
            .unwrap_or_else(|_| "n/a".into());
        println!("{name:<10} {:>16} {estimate:>14}", g.spanning_tree_count());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
