use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hexarep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexarep"))
        .args(args)
        .env_remove("HEXAREP_SEED")
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn build_duad_and_stheta() {
    let dir = tempfile::tempdir().unwrap();
    let duad = dir.path().join("duad.json");
    assert_eq!(hexarep(&["build", "q52-duad", "--out", arg(&duad)]).status.code(), Some(0));
    let v = read(&duad);
    assert_eq!(v["points"].as_array().unwrap().len(), 27);
    assert_eq!(v["lines"].as_array().unwrap().len(), 45);

    let st = dir.path().join("stheta.json");
    assert_eq!(hexarep(&["build", "stheta", "--out", arg(&st)]).status.code(), Some(0));
    let v = read(&st);
    assert_eq!(v["points"].as_array().unwrap().len(), 243);
    assert_eq!(v["lines"].as_array().unwrap().len(), 729);
    assert_eq!(v["p4_labels"].as_object().unwrap().len(), 162);
}

#[test]
fn unwritable_path_is_io_error() {
    let out = hexarep(&["build", "q52-duad", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_geometry_on_stheta() {
    let dir = tempfile::tempdir().unwrap();
    let st = dir.path().join("stheta.json");
    hexarep(&["build", "stheta", "--out", arg(&st)]);
    let out = hexarep(&["verify", "geometry", arg(&st)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("two disjoint partitions T1, T2"));
}

#[test]
fn malformed_input_is_fault() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(hexarep(&["verify", "geometry", arg(&bad)]).status.code(), Some(2));
}

#[test]
fn corrupted_representation_fails_named_check() {
    let dir = tempfile::tempdir().unwrap();
    let geo = dir.path().join("geo.json");
    let rep = dir.path().join("rep.json");
    hexarep(&["build", "q52xL3", "--out", arg(&geo)]);
    hexarep(&["build", "rep-81", "--out", arg(&rep)]);
    assert_eq!(
        hexarep(&["verify", "representation", arg(&geo), arg(&rep)]).status.code(),
        Some(0)
    );

    let mut v = read(&rep);
    v["psi"][5] = serde_json::json!({ "e": 0, "v": "0" });
    std::fs::write(&rep, v.to_string()).unwrap();
    let out = hexarep(&["verify", "representation", arg(&geo), arg(&rep)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL] images are involutions"));
}

#[test]
fn theorem_certificate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(hexarep(&["verify", "theorem", "--out", arg(&a)]).status.code(), Some(0));
    assert_eq!(hexarep(&["verify", "theorem", "--out", arg(&b)]).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let v = read(&a);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["hexagons"][0]["group_order"], "8192");
    assert_eq!(v["hexagons"][0]["sign"], "+");
    assert_eq!(v["hexagons"][1]["group_order"], "524288");
    assert_eq!(v["hexagons"][1]["sign"], "-");
}

#[test]
fn seed_flag_and_env_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    hexarep(&["--seed", "17", "verify", "theorem", "--out", arg(&a)]);
    assert_eq!(read(&a)["seed"], 17);
    let out = Command::new(env!("CARGO_BIN_EXE_hexarep"))
        .args(["verify", "theorem", "--out", arg(&a)])
        .env("HEXAREP_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read(&a)["seed"], 99);
}

#[test]
fn export_tables() {
    let dir = tempfile::tempdir().unwrap();
    let theta = dir.path().join("theta.json");
    hexarep(&["export", "theta", "--out", arg(&theta)]);
    let t = read(&theta)["theta"].clone();
    let rows = t.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), 9);
        assert_eq!(row[i], 0);
        assert!(row.iter().all(|x| x.as_u64().unwrap() < 3));
    }

    let delta = dir.path().join("delta.json");
    hexarep(&["export", "delta", "--out", arg(&delta)]);
    let d = read(&delta)["delta"].as_array().unwrap().clone();
    assert_eq!(d.len(), 27);
    let distinct: std::collections::HashSet<String> = d.iter().map(|x| x.to_string()).collect();
    assert_eq!(distinct.len(), 27);

    let eps = dir.path().join("eps.json");
    hexarep(&["export", "epsilon", "--out", arg(&eps)]);
    assert_eq!(read(&eps)["eps"].as_array().unwrap().len(), 27);

    let dist = dir.path().join("dist.json");
    hexarep(&["export", "distances", "--out", arg(&dist)]);
    let m = read(&dist)["matrix"].clone();
    let max = m
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()))
        .max();
    assert_eq!(max, Some(3));
    assert_eq!(m.as_array().unwrap().len(), 81);
}

#[test]
fn json_format_prints_report() {
    let dir = tempfile::tempdir().unwrap();
    let geo = dir.path().join("geo.json");
    hexarep(&["build", "q52-duad", "--out", arg(&geo)]);
    let out = hexarep(&["--format", "json", "verify", "geometry", arg(&geo)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().len() >= 4);
}
