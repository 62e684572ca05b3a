// End-to-end dataset pipeline: build a small TU-format dataset, sparsify it
// with each method, write the result and compare the statistics.

use learning_backbone::dataset::{
    compute_stats, read_dataset, sparsify_dataset, write_dataset, write_leaders,
};
use learning_backbone::generators::{complete, connected_gnp, cycle, grid, petersen};
use learning_backbone::{BackboneMethod, DatasetBundle, StatsReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs = vec![cycle(6), complete(5), petersen(), grid(3, 4)];
    graphs.extend((0..6).map(|_| connected_gnp(12, 0.35, &mut rng)));
    let labels = (0..graphs.len()).map(|i| i % 2).collect();
    let bundle = DatasetBundle {
        name: "DEMO".into(),
        graphs,
        labels,
        node_labels: None,
    };

    let dir = tempfile::tempdir()?;
    write_dataset(&bundle, &dir.path().join("DEMO"))?;
    let original = read_dataset(&dir.path().join("DEMO"), "DEMO")?;

    println!("{}", StatsReport::TABLE_HEADER);
    for method in [
        BackboneMethod::Zfs,
        BackboneMethod::Distance,
        BackboneMethod::DistanceTree,
        BackboneMethod::RandomTree,
    ] {
        let out = sparsify_dataset(&original, method, 1)?;
        assert!(out.violations.is_empty());
        let target = dir.path().join(method.to_string());
        write_dataset(&out.bundle, &target)?;
        write_leaders(&target, "DEMO", &out.leaders)?;
        let mut stats = compute_stats(&original, &out.bundle)?;
        stats.name = method.to_string();
        println!("{}", stats.table_row());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
