use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn tch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_instance(dir: &Path, name: &str, v: Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn hull_of(dir: &Path, v: Value) -> Value {
    let input = write_instance(dir, "in.json", v);
    let out = dir.join("out.json");
    let o = tch(&[
        "hull",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap()
}

fn inst(metric: &str, speed: &str, pts: &[[&str; 2]]) -> Value {
    json!({ "schema_version": 1, "metric": metric, "speed": speed, "points": pts })
}

#[test]
fn empty_instance() {
    let dir = tempfile::tempdir().unwrap();
    let r = hull_of(dir.path(), inst("L1", "2", &[]));
    assert_eq!(r["clusters"], json!([]));
    assert_eq!(r["highway_links"], json!([]));
}

#[test]
fn two_points_close_and_far() {
    let dir = tempfile::tempdir().unwrap();
    let near = hull_of(dir.path(), inst("L1", "2", &[["1", "1"], ["5", "1"]]));
    assert_eq!(near["clusters"].as_array().unwrap().len(), 1);
    assert_eq!(near["clusters"][0]["members"], json!([0, 1]));
    let far = hull_of(dir.path(), inst("L1", "2", &[["1", "1"], ["9", "1"]]));
    assert_eq!(far["clusters"].as_array().unwrap().len(), 2);
    assert_eq!(far["highway_links"].as_array().unwrap().len(), 1);
}

#[test]
fn exact_values_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = hull_of(
        dir.path(),
        inst("L2INF", "inf", &[["1/3", "0.25"], ["2/3", "1/4"]]),
    );
    assert_eq!(r["points"], json!([["1/3", "0.25"], ["2/3", "1/4"]]));
    let hull = r["clusters"][0]["hull"].as_array().unwrap();
    assert!(hull.contains(&json!(["1/3", "1/4"])));
    assert!(hull.contains(&json!(["2/3", "1/4"])));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let code = |p: PathBuf| tch(&["hull", p.to_str().unwrap()]).status.code();
    assert_eq!(code(d.join("missing.json")), Some(2));
    std::fs::write(d.join("junk.json"), "{ not json").unwrap();
    assert_eq!(code(d.join("junk.json")), Some(2));
    assert_eq!(
        code(write_instance(d, "a.json", inst("L1", "2", &[["x", "1"]]))),
        Some(2)
    );
    assert_eq!(
        code(write_instance(d, "b.json", inst("L1", "2", &[["-1", "1"]]))),
        Some(3)
    );
    assert_eq!(
        code(write_instance(d, "c.json", inst("L1", "1", &[]))),
        Some(3)
    );
    assert_eq!(
        code(write_instance(d, "e.json", inst("L1", "inf", &[]))),
        Some(3)
    );
    assert_eq!(
        code(write_instance(d, "f.json", inst("L2INF", "3", &[]))),
        Some(3)
    );
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let pts = [
        ["1", "1"],
        ["5", "1"],
        ["40", "3"],
        ["2", "30"],
        ["20", "21"],
    ];
    let input = write_instance(d, "in.json", inst("L1", "3/2", &pts));
    let res = d.join("res.json");
    assert!(tch(&[
        "hull",
        input.to_str().unwrap(),
        "--out",
        res.to_str().unwrap()
    ])
    .status
    .success());
    let a = tch(&["svg", res.to_str().unwrap()]);
    let b = tch(&["svg", res.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<circle").count(), pts.len());
}

#[test]
fn check_is_deterministic_and_passes() {
    let args = ["check", "--trials", "30", "--seed", "5", "--n-max", "15"];
    let a = tch(&args);
    let b = tch(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let l2 = tch(&[
        "check", "--trials", "30", "--metric", "l2inf", "--n-max", "15",
    ]);
    assert!(l2.status.success());
}

#[test]
fn check_detects_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let repro = dir.path().join("repro.json");
    let o = tch(&[
        "check",
        "--trials",
        "60",
        "--n-max",
        "25",
        "--coord-max",
        "60",
        "--speed",
        "2",
        "--fault-speed",
        "3",
        "--out",
        repro.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let back: Value = serde_json::from_str(&std::fs::read_to_string(&repro).unwrap()).unwrap();
    assert_eq!(back["metric"], "L1");
    assert_eq!(back["speed"], "2");
    assert!(tch(&["hull", repro.to_str().unwrap()]).status.success());
}

#[test]
fn bench_prints_a_table() {
    let o = tch(&["bench", "--min-exp", "6", "--max-exp", "7", "--reps", "1"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 3);
}
