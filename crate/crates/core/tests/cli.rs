use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levelpers"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn level_circle_has_closed_and_open_bar() {
    let v = json(&bin(&["level", "--input", &fixture("circ.json")]));
    let bars = v["bars"].as_array().unwrap();
    assert_eq!(bars.len(), 2);
    for (bar, closed) in bars.iter().zip([true, false]) {
        assert_eq!(bar["degree"], 0);
        assert_eq!(bar["left"], 0.0);
        assert_eq!(bar["right"], 2.0);
        assert_eq!(bar["left_closed"], closed);
        assert_eq!(bar["right_closed"], closed);
    }
}

#[test]
fn sublevel_infinite_bars_use_inf() {
    let v = json(&bin(&["sublevel", "--input", &fixture("circ.json")]));
    assert_eq!(v["infinite"][1]["right"], "inf");
    assert_eq!(v["finite"], Value::Array(vec![]));
}

#[test]
fn field_flag_overrides_document() {
    let v = json(&bin(&[
        "level",
        "--input",
        &fixture("lambda.json"),
        "--field",
        "5",
    ]));
    assert_eq!(v["field"], 5);
    let out = bin(&["level", "--input", &fixture("lambda.json"), "--field", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime"));
}

#[test]
fn empty_simplices_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(
        &path,
        r#"{"vertices": [{"id": 0, "value": 0.0}], "simplices": []}"#,
    )
    .unwrap();
    let out = bin(&["sublevel", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("simplices"));
}

#[test]
fn malformed_json_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": [\n{\"id\": 0}]}").unwrap();
    let out = bin(&["level", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn both_formats_write_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path: PathBuf = dir.path().join("v.json");
    let out = bin(&[
        "delta-gamma",
        "--input",
        &fixture("v.json"),
        "--format",
        "both",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["delta"]["0"][0]["x"], 0.0);
    assert_eq!(v["gamma"]["0"][0]["x"], 1.0);
    let svg = std::fs::read_to_string(out_path.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("δ0"));
    // no temporary files left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn refine_check_corpus_passes() {
    let v = json(&bin(&["refine-check", "--seeds", "100"]));
    assert_eq!(v["cases"], 104);
    assert_eq!(v["passed"], true);
}

#[test]
fn morse_compare_mismatch_exits_one() {
    let ok = bin(&[
        "morse",
        "--input",
        &fixture("circ.json"),
        "--complex",
        &fixture("circle_morse.json"),
    ]);
    assert_eq!(json(&ok)["compare"]["matched"], true);
    let bad = bin(&[
        "morse",
        "--input",
        &fixture("circ.json"),
        "--complex",
        &fixture("lambda_morse.json"),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("\"matched\": false"), "{err}");
}

#[test]
fn circle_periods_flag() {
    let a = json(&bin(&["circle", "--input", &fixture("s1map.json")]));
    assert_eq!(a["novikov_betti"], serde_json::json!([0, 0]));
    assert_eq!(a["unbounded"]["0"], 1);
    let b = json(&bin(&[
        "circle",
        "--input",
        &fixture("s1map.json"),
        "--periods",
        "9",
    ]));
    assert_eq!(a["bars"], b["bars"]);
    assert_eq!(b["periods"], 9);
    let small = bin(&[
        "circle",
        "--input",
        &fixture("s1map.json"),
        "--periods",
        "1",
    ]);
    assert_eq!(small.status.code(), Some(2));
}

#[test]
fn check_command() {
    let v = json(&bin(&["check", "--seeds", "20", "--max-vertices", "8"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["spaces"], 24);
}
