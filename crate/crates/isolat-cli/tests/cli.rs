use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn isolat(dir: &Path, config: &str, args: &[&str]) -> Output {
    let cfg = dir.join("run.json");
    fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_isolat"))
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const FIGURE_ONE: &str = r#"{"command": "synth", "depth": 3, "synth": {"model": "volcano", "norm_l": 2,
    "symbol_in_k": 0, "surface_cycle_length": 1, "l_class_orders": [1, 2, 2]}}"#;

#[test]
fn neighbor_tallies() {
    let dir = TempDir::new().unwrap();
    let split = r#"{"command": "neighbors", "algebra": {"ell": 2, "real_split": "split", "upper_split": ["split", "inert"]}}"#;
    let o = isolat(dir.path(), split, &[]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rm-preserving:9 rm-descending:6"));

    let level_one = r#"{"command": "neighbors", "algebra": {"ell": 2, "real_split": "inert", "upper_split": ["inert"]},
        "neighbors": {"start": {"rm_level": 1}}}"#;
    assert!(stdout(&isolat(dir.path(), level_one, &[])).contains("ascending:1 horizontal:6 descending:8"));

    let three = r#"{"command": "neighbors", "algebra": {"ell": 3, "real_split": "ramified", "upper_split": ["ramified"]}}"#;
    assert!(stdout(&isolat(dir.path(), three, &[])).contains("total:40"));
}

#[test]
fn explore_writes_a_validated_graph() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"command": "neighbors", "depth": 2, "algebra": {"ell": 2, "real_split": "inert", "upper_split": ["inert"]},
        "neighbors": {"kind": "l", "explore": true}}"#;
    let o = isolat(dir.path(), cfg, &[]);
    assert!(o.status.success(), "{}", stdout(&o));
    let json = fs::read_to_string(dir.path().join("out/graph.json")).unwrap();
    // five root edges, then one up and four down from each child
    assert_eq!(json.matches("\"from\"").count(), 5 + 5 * 5);
}

#[test]
fn synth_outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let o = isolat(dir.path(), FIGURE_ONE, &[]);
    assert!(o.status.success(), "{}", stdout(&o));
    let first = fs::read(dir.path().join("out/graph.dot")).unwrap();
    assert!(stdout(&o).contains("level sizes [1, 2, 4, 8]"));
    isolat(dir.path(), FIGURE_ONE, &[]);
    assert_eq!(fs::read(dir.path().join("out/graph.dot")).unwrap(), first);
}

#[test]
fn pasting_a_synthesized_graph() {
    let dir = TempDir::new().unwrap();
    let inert = r#"{"command": "synth", "depth": 3, "synth": {"model": "volcano", "norm_l": 4, "symbol_in_k": -1,
        "surface_cycle_length": 1}}"#;
    assert!(isolat(dir.path(), inert, &[]).status.success());
    let input = dir.path().join("volcano.json");
    fs::rename(dir.path().join("out/graph.json"), &input).unwrap();
    let paste = format!(
        r#"{{"command": "synth", "synth": {{"model": "paste", "input": {:?}, "real_split": "inert", "ell": 2}}}}"#,
        input.to_str().unwrap()
    );
    let o = isolat(dir.path(), &paste, &[]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("pass rm-preserving-degree"));
}

#[test]
fn polarized_doubling() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"command": "synth", "depth": 2, "synth": {"model": "polarized", "doubling": true,
        "volcano": {"norm_l": 3, "symbol_in_k": 1, "surface_cycle_length": 2}}}"#;
    let o = isolat(dir.path(), cfg, &[]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("level sizes [4, 8, 24]"));
}

#[test]
fn goup_report_and_cyclic_flag() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"command": "goup", "algebra": {"ell": 2, "real_split": "ramified", "upper_split": ["inert"]},
        "goup": {"start": {"conductor": [1], "rm_level": 1}}}"#;
    let o = isolat(dir.path(), cfg, &[]);
    assert!(o.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/report.json")).unwrap()).unwrap();
    assert_eq!(report["reachable_max"], false);
    assert_eq!(report["exceptional"], "ramified-inert");
    assert_eq!(report["path"][0]["step"], "ll");

    let o = isolat(dir.path(), cfg, &["--allow-cyclic"]);
    assert!(o.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/report.json")).unwrap()).unwrap();
    assert_eq!(report["reachable_max"], true);
    assert_eq!(report["exceptional"], serde_json::Value::Null);
    let path = report["path"].as_array().unwrap();
    assert_eq!(path.last().unwrap()["step"], "cyclic");
}

#[test]
fn goup_matrix_table() {
    let dir = TempDir::new().unwrap();
    let o = isolat(dir.path(), r#"{"command": "goup"}"#, &["--matrix"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.matches("split-both-inert").count(), 3);
    assert_eq!(out.matches("ramified-inert").count(), 2);
    let o = isolat(dir.path(), r#"{"command": "goup"}"#, &["--matrix", "--allow-cyclic"]);
    assert!(!stdout(&o).contains("inert ("));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(isolat(dir.path(), "{not json", &[]).status.code(), Some(2));
    let bad_symbol = r#"{"command": "neighbors", "algebra": {"ell": 2, "real_split": "inert", "upper_split": ["ramified"]}}"#;
    assert_eq!(isolat(dir.path(), bad_symbol, &[]).status.code(), Some(2));
    let bad_ratio = r#"{"command": "synth", "synth": {"model": "volcano", "norm_l": 2, "symbol_in_k": 1,
        "surface_cycle_length": 1, "l_class_orders": [1, 2]}}"#;
    assert_eq!(isolat(dir.path(), bad_ratio, &[]).status.code(), Some(4));
    let deep = r#"{"command": "goup", "goup": {"start": {"rm_level": 2}}}"#;
    assert_eq!(isolat(dir.path(), deep, &["--precision", "9"]).status.code(), Some(3));
    let fault = r#"{"command": "oracle", "oracle": {"fault": true}}"#;
    assert_eq!(isolat(dir.path(), fault, &[]).status.code(), Some(5));
    assert_eq!(isolat(dir.path(), r#"{"command": "oracle"}"#, &[]).status.code(), Some(0));
}
