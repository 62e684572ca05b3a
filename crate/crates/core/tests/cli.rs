use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use learning_backbone::cli::{run, Cli, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK};
use learning_backbone::dataset::{read_dataset, spanning_forest_average_degree, StatsReport};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn backbone(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("backbone").chain(args.iter().copied()))
        .expect("arguments parse");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(cli, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn sparsify(name: &str, out: &Path, extra: &[&str]) -> (i32, String, String) {
    let input = fixture(name);
    let out = out.display().to_string();
    let mut args = vec![
        "sparsify", "--input", &input, "--name", name, "--output", &out,
    ];
    args.extend_from_slice(extra);
    backbone(&args)
}

#[test]
fn sparsify_zfs_writes_dataset_leaders_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, stderr) = sparsify("SHAPES", dir.path(), &["--method", "zfs"]);
    assert_eq!(code, EXIT_OK, "{stderr}");
    assert!(stdout.contains("SHAPES"));
    for suffix in [
        "A",
        "graph_indicator",
        "graph_labels",
        "node_labels",
        "leaders",
    ] {
        assert!(
            dir.path().join(format!("SHAPES_{suffix}.txt")).exists(),
            "{suffix}"
        );
    }
    let json = fs::read_to_string(dir.path().join("SHAPES_stats.json")).unwrap();
    let stats: StatsReport = serde_json::from_str(&json).unwrap();
    let original = read_dataset(&fixtures().join("SHAPES"), "SHAPES").unwrap();
    assert_eq!(stats.graph_count, 6);
    let expected = spanning_forest_average_degree(&original);
    assert!((stats.avg_degree_backbone.unwrap() - expected).abs() < 1e-12);
}

#[test]
fn random_tree_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let (code, _, err) = sparsify(
            "SHAPES",
            d.path(),
            &["--method", "random-tree", "--seed", "7"],
        );
        assert_eq!(code, EXIT_OK, "{err}");
    }
    for suffix in [
        "A",
        "graph_indicator",
        "graph_labels",
        "node_labels",
        "leaders",
    ] {
        let f = format!("SHAPES_{suffix}.txt");
        assert_eq!(
            fs::read(a.path().join(&f)).unwrap(),
            fs::read(b.path().join(&f)).unwrap(),
            "{f}"
        );
    }
    let c = tempfile::tempdir().unwrap();
    sparsify(
        "SHAPES",
        c.path(),
        &["--method", "random-tree", "--seed", "8"],
    );
    // The Petersen graph alone has 2000 spanning trees; another seed moves it.
    assert_ne!(
        fs::read(a.path().join("SHAPES_A.txt")).unwrap(),
        fs::read(c.path().join("SHAPES_A.txt")).unwrap()
    );
}

#[test]
fn trees_pass_through_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    for method in ["zfs", "distance", "random-tree"] {
        let (code, _, err) = sparsify("TREES", dir.path(), &["--method", method]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(
            fs::read(dir.path().join("TREES_A.txt")).unwrap(),
            fs::read(fixtures().join("TREES/TREES_A.txt")).unwrap(),
            "{method}"
        );
    }
}

fn verify(name: &str, bb: &Path, extra: &[&str]) -> (i32, String, String) {
    let input = fixture(name);
    let bb = bb.display().to_string();
    let mut args = vec![
        "verify",
        "--input",
        &input,
        "--name",
        name,
        "--backbone",
        &bb,
    ];
    args.extend_from_slice(extra);
    backbone(&args)
}

#[test]
fn verify_accepts_every_method() {
    let cases: &[(&[&str], &[&str])] = &[
        (
            &["--method", "zfs"],
            &["--method", "zfs", "--rank-check", "--trials", "20"],
        ),
        (&["--method", "distance"], &["--method", "distance"]),
        (
            &["--method", "distance", "--tree"],
            &["--method", "distance", "--tree"],
        ),
        (
            &["--method", "random-tree", "--seed", "3"],
            &["--method", "random-tree"],
        ),
    ];
    for (sp, vf) in cases {
        let dir = tempfile::tempdir().unwrap();
        let (code, _, err) = sparsify("SHAPES", dir.path(), sp);
        assert_eq!(code, EXIT_OK, "{err}");
        let (code, out, err) = verify("SHAPES", dir.path(), vf);
        assert_eq!(code, EXIT_OK, "{sp:?}: {out}{err}");
        assert!(out.contains("6 passed"), "{out}");
    }
}

#[test]
fn verify_flags_an_injected_edge() {
    let dir = tempfile::tempdir().unwrap();
    sparsify("SHAPES", dir.path(), &["--method", "zfs"]);
    // Graph 0 is C5 on global nodes 1..=5; (1, 3) is a chord it lacks.
    let a = dir.path().join("SHAPES_A.txt");
    let mut text = fs::read_to_string(&a).unwrap();
    text.push_str("1, 3\n3, 1\n");
    fs::write(&a, text).unwrap();
    let (code, out, err) = verify("SHAPES", dir.path(), &[]);
    assert_eq!(code, EXIT_INVARIANT);
    assert!(out.contains("1 failed"), "{out}");
    assert!(err.contains("graph 0: containment"), "{err}");
}

#[test]
fn verify_detects_distance_loss() {
    let dir = tempfile::tempdir().unwrap();
    // A random tree does not preserve leader distances in general; check it
    // against the distance criteria with the greedy leaders.
    sparsify("SHAPES", dir.path(), &["--method", "distance"]);
    let leaders = fs::read(dir.path().join("SHAPES_leaders.txt")).unwrap();
    let other = tempfile::tempdir().unwrap();
    sparsify(
        "SHAPES",
        other.path(),
        &["--method", "random-tree", "--seed", "1"],
    );
    fs::write(other.path().join("SHAPES_leaders.txt"), leaders).unwrap();
    let (code, _, err) = verify("SHAPES", other.path(), &["--method", "distance"]);
    assert_eq!(code, EXIT_INVARIANT);
    assert!(err.contains("distance-to-leader"), "{err}");
}

#[test]
fn stats_prints_table() {
    let (code, out, _) = backbone(&["stats", "--input", &fixture("TOY"), "--name", "TOY"]);
    assert_eq!(code, EXIT_OK);
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("TOY"));
    assert!(row.contains("1.667"), "{row}");

    let dir = tempfile::tempdir().unwrap();
    sparsify("TOY", dir.path(), &[]);
    let bb = dir.path().display().to_string();
    let (code, out, _) = backbone(&[
        "stats",
        "--input",
        &fixture("TOY"),
        "--name",
        "TOY",
        "--backbone",
        &bb,
        "--json-dir",
        &bb,
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().nth(1).unwrap().contains("1.333"));
    assert!(dir.path().join("TOY_stats.json").exists());
}

#[test]
fn count_trees_prints_count_and_bound() {
    let shapes = fixture("SHAPES");
    let count = |i: &str| {
        backbone(&[
            "count-trees",
            "--input",
            &shapes,
            "--name",
            "SHAPES",
            "--graph-index",
            i,
        ])
    };
    let (code, out, _) = count("0");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("spanning trees: 5\n"), "{out}");
    assert!(out.contains("upper bound: 6.25"), "{out}");
    assert!(count("1").1.contains("spanning trees: 16\n"));
    assert!(count("2").1.contains("spanning trees: 2000\n"));
    let (code, out, _) = count("3");
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains("spanning trees: 0\n") && out.contains("disconnected"),
        "{out}"
    );
    assert_eq!(count("99").0, EXIT_INPUT);
}

#[test]
fn unreadable_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = sparsify("NOPE", dir.path(), &[]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("NOPE_graph_labels.txt"), "{err}");

    let bad = tempfile::tempdir().unwrap();
    fs::write(bad.path().join("B_graph_labels.txt"), "0\n").unwrap();
    fs::write(bad.path().join("B_graph_indicator.txt"), "1\n1\n").unwrap();
    fs::write(bad.path().join("B_A.txt"), "1, 2\n2, x\n").unwrap();
    let input = bad.path().display().to_string();
    let (code, _, err) = backbone(&["stats", "--input", &input, "--name", "B"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("B_A.txt:2"), "{err}");
}
