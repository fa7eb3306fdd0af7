use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const SL2_16: &str = r#"{"construct":"SL2","q":16}"#;

fn cdgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn witness(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "witnesses", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn graph_of_sl2_16() {
    let o = cdgraph(&["graph", "--spec", SL2_16, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"vertices":[2,3,5,17],"edges":[[3,5]]}"#
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], serde_json::json!([2, 3, 5, 17]));
    assert_eq!(v["edges"], serde_json::json!([[3, 5]]));
}

#[test]
fn graph_as_dot() {
    let o = cdgraph(&["graph", "--spec", SL2_16, "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "graph G {\n  2;\n  3;\n  5;\n  17;\n  3 -- 5;\n}\n"
    );
}

#[test]
fn analyze_sl2_16() {
    let o = cdgraph(&["analyze", "--spec", SL2_16]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["components"], serde_json::json!([[2], [3, 5], [17]]));
    assert_eq!(v["cut_vertices"], serde_json::json!([]));
    assert_eq!(v["connected"], Value::Bool(false));
}

#[test]
fn degrees_of_a5() {
    let o = cdgraph(&[
        "degrees",
        "--spec",
        r#"{"construct":"SL2","q":4}"#,
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("{1, 3x2, 4, 5}\n"), "{}", stdout(&o));
}

#[test]
fn spec_from_file() {
    let dir = std::env::temp_dir().join(format!("cdgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("sl2_8.json");
    std::fs::write(&spec, r#"{"construct":"SL2","q":8}"#).unwrap();
    let out = dir.join("graph.json");
    let o = cdgraph(&[
        "graph",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written.trim(), r#"{"vertices":[2,3,7],"edges":[]}"#);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_witnesses() {
    for name in [
        "v1_extension.json",
        "w_extension.json",
        "sl2_4_times_q8.json",
        "sl2_4_times_3_extraspecial.json",
        "sl2_4_times_5_extraspecial.json",
    ] {
        let o = cdgraph(&["verify", "--spec", &witness(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["pass"], Value::Bool(true), "{name}");
    }
    let o = cdgraph(&["verify", "--spec", &witness("v1_extension.json")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["computed"]["edges"], serde_json::json!([[2, 5], [3, 5]]));
}

#[test]
fn verify_failure_exits_one() {
    let o = cdgraph(&["verify", "--spec", &witness("natural4_extension.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], Value::Bool(false));
    assert_eq!(v["connected"], Value::Bool(false));
}

#[test]
fn predict_and_module_commands() {
    let o = cdgraph(&["predict", "--spec", r#"{"theorem":"T2c_ii","p":2}"#]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"vertices":[2,3,5],"edges":[[2,3],[2,5]]}"#
    );

    let v1 = r#"{"construct":"semidirect","module":"V1"}"#;
    let o = cdgraph(&["orbits", "--spec", v1]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sizes: Vec<u64> = v["report"]["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [5, 10]);

    let o = cdgraph(&["nq", "--spec", v1, "--q", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["satisfied"], Value::Bool(false));

    let o = cdgraph(&["vsets", "--spec", v1, "--r", "3", "--s", "5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dichotomy"], Value::Bool(true));
}

#[test]
fn suite_is_deterministic() {
    let a = cdgraph(&["suite"]);
    let b = cdgraph(&["suite"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], 11);
}

#[test]
fn exit_codes() {
    assert_eq!(cdgraph(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cdgraph(&["graph"]).status.code(), Some(2));
    assert_eq!(
        cdgraph(&["graph", "--spec", r#"{"construct":"SL3","q":4}"#])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cdgraph(&["graph", "--spec", "{not json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cdgraph(&["graph", "--spec", "/nonexistent/spec.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cdgraph(&["graph", "--spec", SL2_16, "--format", "svg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cdgraph(&["graph", "--spec", SL2_16, "--ceiling", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cdgraph(&["predict", "--spec", r#"{"theorem":"T2b_ii","p":3}"#])
            .status
            .code(),
        Some(2)
    );
    let o = cdgraph(&["graph", "--spec", SL2_16, "--ceiling", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling"));
}
