#[allow(dead_code)]
mod zero_forcing_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/zero_forcing.rs"
    ));
}

#[test]
fn zero_forcing_example_runs() {
    zero_forcing_example::run_example().expect("zero_forcing example should run");
}

#[allow(dead_code)]
mod learning_backbone_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/learning_backbone.rs"
    ));
}

#[test]
fn learning_backbone_example_runs() {
    learning_backbone_example::run_example().expect("learning_backbone example should run");
}

#[allow(dead_code)]
mod distance_backbone_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/distance_backbone.rs"
    ));
}

#[test]
fn distance_backbone_example_runs() {
    distance_backbone_example::run_example().expect("distance_backbone example should run");
}

#[allow(dead_code)]
mod controllability_rank_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/controllability_rank.rs"
    ));
}

#[test]
fn controllability_rank_example_runs() {
    controllability_rank_example::run_example().expect("controllability_rank example should run");
}

#[allow(dead_code)]
mod spanning_trees_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/spanning_trees.rs"
    ));
}

#[test]
fn spanning_trees_example_runs() {
    spanning_trees_example::run_example().expect("spanning_trees example should run");
}

#[allow(dead_code)]
mod sparsify_dataset_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/sparsify_dataset.rs"
    ));
}

#[test]
fn sparsify_dataset_example_runs() {
    sparsify_dataset_example::run_example().expect("sparsify_dataset example should run");
}
