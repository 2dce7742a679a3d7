use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_convskel"));
    c.env_remove("CONVSKEL_OUT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn generate(dir: &Path, args: &[&str]) -> PathBuf {
    let out = dir.join("gen");
    let mut full = vec!["generate", "--out", p(&out)];
    full.extend_from_slice(args);
    ok(&full);
    out.join("graph.edges")
}

#[test]
fn generated_convex_graph_has_unit_convexity() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), &["--kind", "convex", "--n", "300", "--t", "0.25", "--seed", "1"]);
    let out = dir.path().join("conv");
    let stdout = ok(&["convexity", "--input", p(&g), "--runs", "20", "--seed", "7", "--format", "json", "--out", p(&out)]);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["X"], 1.0);
    assert_eq!(report["Xs"], 1.0);
    let manifest = json(out.join("manifest.json"));
    assert_eq!(manifest["subcommand"], "convexity");
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn skeleton_writes_trajectory_files() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), &["--kind", "lattice-tri", "--side", "8"]);
    let out = dir.path().join("sk");
    ok(&["skeleton", "--input", p(&g), "--method", "clustering", "--batch", "0.01", "--stop", "xs-peak", "--seed", "3", "--runs", "5", "--checkpoint-runs", "3", "--out", p(&out)]);
    let header = fs::read_to_string(out.join("checkpoints.tsv")).unwrap();
    assert!(header.starts_with("frac_removed\tXs\tX\ts\tavgC\n"));
    assert!(fs::read_to_string(out.join("removals.tsv")).unwrap().starts_with("step\tbatch\tu\tv\tscore\n"));
    assert!(out.join("skeleton.edges").exists());
    assert!(json(out.join("skeleton_summary.json"))["retention"].as_f64().unwrap() <= 1.0);
}

#[test]
fn errors_are_single_json_lines_with_exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = run(&["stats", "--input", "/nonexistent/graph.edges", "--out", p(dir.path())]);
    assert_eq!(missing.status.code(), Some(1));
    let stderr = String::from_utf8(missing.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
    let err: Value = serde_json::from_str(stderr.trim()).unwrap();
    assert_eq!(err["error"], "io");

    assert_eq!(run(&["stats", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));

    let bad = dir.path().join("bad.edges");
    fs::write(&bad, "a b\nc d e f\n").unwrap();
    let parse = run(&["stats", "--input", p(&bad), "--out", p(dir.path())]);
    assert_eq!(parse.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&parse.stderr).unwrap();
    assert_eq!(err["error"], "parse");

    let g = generate(dir.path(), &["--kind", "er", "--n", "30", "--avg-k", "4"]);
    let usage = run(&["backbone", "--input", p(&g), "--kind", "betweenness", "--out", p(dir.path())]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn output_directory_defaults_from_environment() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("from-env");
    let status = bin()
        .args(["generate", "--kind", "lattice-rect", "--side", "4"])
        .env("CONVSKEL_OUT", &target)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(target.join("graph.edges").exists());
    assert!(target.join("manifest.json").exists());
}

#[test]
fn backbones_keep_the_node_set_for_edit_distance() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), &["--kind", "er", "--n", "80", "--avg-k", "6", "--seed", "2"]);
    let bb = dir.path().join("bb");
    ok(&["backbone", "--input", p(&g), "--kind", "betweenness", "--target-edges", "100", "--mode", "low", "--out", p(&bb)]);
    let out = dir.path().join("ged");
    ok(&["ged", "--inputs", p(&g), p(&bb.join("backbone.edges")), "--out", p(&out)]);
    let table = fs::read_to_string(out.join("ged.tsv")).unwrap();
    let row: Vec<&str> = table.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[1], "0");
    assert_eq!(row[2], "140");
}

#[test]
fn partitions_compare_and_score() {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("two.edges");
    fs::write(&edges, "a b\nb c\na c\nd e\ne f\nd f\nc d\n").unwrap();
    let part = dir.path().join("p.txt");
    fs::write(&part, "a 1\nb 1\nc 1\nd 2\ne 2\nf 2\n").unwrap();
    let other = dir.path().join("q.txt");
    fs::write(&other, "a x\nb x\nc x\nd y\ne y\nf y\n").unwrap();
    let out = dir.path().join("o");
    let cmp: Value = serde_json::from_str(&ok(&["compare-partitions", "--p1", p(&part), "--p2", p(&other), "--out", p(&out)])).unwrap();
    assert_eq!(cmp["nmi"], 1.0);
    assert_eq!(cmp["nvi"], 0.0);
    let q: Value = serde_json::from_str(&ok(&["modularity", "--input", p(&edges), "--partition", p(&part), "--out", p(&out)])).unwrap();
    let expected = 2.0 * (3.0 / 7.0 - (7.0f64 / 14.0).powi(2));
    assert!((q["Q"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert!((q["inter_group_fraction"].as_f64().unwrap() - 1.0 / 7.0).abs() < 1e-12);
}

#[test]
fn pipeline_rows_cover_network_skeleton_and_tree() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), &["--kind", "random-tree", "--n", "60"]);
    let out = dir.path().join("pipe");
    ok(&["pipeline", "--inputs", p(&g), "--realisations", "2", "--runs", "5", "--out", p(&out)]);
    let table = fs::read_to_string(out.join("table1.tsv")).unwrap();
    let rows: Vec<Vec<&str>> = table.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        // A tree is its own skeleton and spanning tree.
        assert_eq!(r[3], "59");
        assert_eq!(r[7], "1");
    }
}

#[test]
fn replay_reproduces_artifacts_and_checks_inputs() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), &["--kind", "er", "--n", "60", "--avg-k", "5", "--seed", "9"]);
    let first = dir.path().join("first");
    ok(&["rewire", "--input", p(&g), "--fraction", "0.1,0.3", "--runs", "10", "--seed", "4", "--out", p(&first)]);
    let second = dir.path().join("second");
    ok(&["replay", "--manifest", p(&first.join("manifest.json")), "--out", p(&second), "--threads", "1"]);
    assert_eq!(fs::read(first.join("rewire.tsv")).unwrap(), fs::read(second.join("rewire.tsv")).unwrap());

    fs::write(&g, "x y\n").unwrap();
    let third = dir.path().join("third");
    let res = run(&["replay", "--manifest", p(&first.join("manifest.json")), "--out", p(&third)]);
    assert_eq!(res.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&res.stderr).unwrap();
    assert_eq!(err["error"], "input-changed");
}

#[test]
fn tables_switch_to_json() {
    let dir = TempDir::new().unwrap();
    let g = generate(dir.path(), &["--kind", "lattice-tri", "--side", "5"]);
    let out = dir.path().join("cc");
    ok(&["ccore", "--input", p(&g), "--runs", "5", "--steps", "3", "--format", "json", "--out", p(&out)]);
    let rows = json(out.join("ccore.json"));
    assert_eq!(rows.as_array().unwrap().len(), 25);
    assert!(rows[0].get("label").is_some() && rows[0].get("core").is_some());
}
