use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const MQ_TRACE: &str = include_str!("../fixtures/mq_trace.json");

fn limitlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_limitlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(limitlab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(limitlab(&["check", "--cases", "0"]).status.code(), Some(2));
    assert_eq!(
        limitlab(&["check", "--subset-cap", "21"]).status.code(),
        Some(2)
    );
    assert_eq!(
        limitlab(&[
            "build-tin",
            "--scenario",
            "/nonexistent.json",
            "--i",
            "0",
            "--n",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let a = limitlab(&["gen", "--seed", "11", "--max-points", "6"]);
    let b = limitlab(&["gen", "--seed", "11", "--max-points", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "gen.json",
        std::str::from_utf8(&a.stdout).unwrap(),
    );
    let out = limitlab(&["build-tin", "--scenario", &path, "--i", "1", "--n", "0"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(json_of(&out)["claims"].is_object());
}

#[test]
fn check_reports_passing_records() {
    let out = limitlab(&[
        "check",
        "--suite",
        "bound",
        "--seed",
        "3",
        "--cases",
        "2",
        "--skip-fixtures",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["suite"], "bound");
    assert_eq!(report["summary"]["failed"], 0);
    assert!(report["summary"]["records"].as_u64().unwrap() > 0);
    assert!(report["records"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["claim"].as_str().unwrap().starts_with("bound.")));
}

#[test]
fn build_mq_emits_the_hand_checked_test() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "mq.json", MQ_TRACE);
    let out = limitlab(&["build-mq", "--scenario", &path]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value = json_of(&out);
    assert_eq!(value["measure"], "1/2");
    assert_eq!(value["trace"]["steps"].as_array().unwrap().len(), 3);

    let out = limitlab(&["build-mq", "--scenario", &path, "--subset", "1/4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["measure"], "0/1");

    let out = limitlab(&["build-mq", "--scenario", &path, "--subset", "1/8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ratio_csv_of_identity_is_constant_one() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = r#"{
        "alpha": "3/4", "beta": "3/4", "a": ["0/1"], "b": ["0/1"],
        "g": {"entries": [["0/1","0/1"],["1/4","1/4"],["1/2","1/2"]], "enumeration": ["1/2","0/1","1/4"]},
        "c": "1/2", "d": "1/1"
    }"#;
    let path = write(dir.path(), "id.json", scenario);
    let csv_path = dir.path().join("ratio.csv");
    let out = limitlab(&[
        "ratio",
        "--scenario",
        &path,
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        [
            "q,ratio,ratio_decimal",
            "0/1,1/1,1.000000000000",
            "1/4,1/1,1.000000000000",
            "1/2,1/1,1.000000000000",
        ]
    );
}

#[test]
fn ratio_csv_without_keys_below_beta_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = r#"{
        "alpha": "1/2", "beta": "1/4", "a": ["0/1"], "b": ["0/1"],
        "g": {"entries": [["1/2","1/4"]], "enumeration": ["1/2"]},
        "c": "1/2", "d": "1/1"
    }"#;
    let path = write(dir.path(), "empty.json", scenario);
    let csv_path = dir.path().join("ratio.csv");
    let out = limitlab(&[
        "ratio",
        "--scenario",
        &path,
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        std::fs::read_to_string(&csv_path).unwrap(),
        "q,ratio,ratio_decimal\n"
    );
}

#[test]
fn uniqueness_selects_disjoint_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = r#"{
        "alpha": "1/2", "beta": "1/2", "a": ["0/1"], "b": ["0/1"],
        "g": {"entries": [["0/1","0/1"]], "enumeration": ["0/1"]},
        "c": "1/2", "d": "1/1"
    }"#;
    let f = r#"{"entries": [["0/1","0/1"],["1/8","1/16"],["1/4","1/8"]], "enumeration": ["0/1","1/8","1/4"]}"#;
    let g = r#"{"entries": [["0/1","0/1"],["1/8","1/8"],["1/4","1/4"]], "enumeration": ["0/1","1/8","1/4"]}"#;
    let sc = write(dir.path(), "sc.json", scenario);
    let f = write(dir.path(), "f.json", f);
    let g = write(dir.path(), "g.json", g);
    let out = limitlab(&[
        "uniqueness",
        "--scenario",
        &sc,
        "--f-table",
        &f,
        "--g-table",
        &g,
        "--p",
        "1/8",
    ]);
    assert_ne!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value = json_of(&out);
    // U at 1/8 is [1/16, 1/8] and U at 1/4 is [1/8, 1/4]; they share 1/8.
    assert_eq!(value["d"].as_array().unwrap().len(), 2);
    assert!(value["claims"].is_object());
    assert_eq!(value["selection"]["selected"].as_array().unwrap().len(), 1);
}
