// Distance-preserving backbones: the union of shortest-path trees from each
// leader keeps every leader-to-vertex distance; the tree variant trades that
// for exactly `n - 1` edges.

use learning_backbone::backbone::{distance_backbone, distance_tree_backbone};
use learning_backbone::controllability::dl_vectors;
use learning_backbone::generators::grid;
use learning_backbone::LeaderSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = grid(4, 4);
    let leaders = LeaderSet::new(g.n(), [0, 6])?;
    let host = dl_vectors(&g, &leaders)?;

    let union = distance_backbone(&g, &leaders)?;
    let kept = dl_vectors(&union.to_graph(), &leaders)?;
    println!(
        "4x4 grid ({} edges), leaders 0 and 6: union of BFS trees keeps {} edges",
        g.edge_count(),
        union.edge_count()
    );
    println!("distances to leaders preserved: {}", kept == host);

    let tree = distance_tree_backbone(&g, &leaders)?;
    let stretched = dl_vectors(&tree.to_graph(), &leaders)?;
    let changed = (0..g.n())
        .filter(|&v| stretched.row(v) != host.row(v))
        .count();
    println!(
        "tree variant keeps {} edges; {changed} vertices see a longer path to the second leader",
        tree.edge_count()
    );
    for v in [5, 10, 14] {
        println!(
            "  vertex {v}: host {:?}, tree {:?}",
            host.row(v),
            stretched.row(v)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
