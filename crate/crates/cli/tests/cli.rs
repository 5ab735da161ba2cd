use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qpade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qpade-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn records(path: &PathBuf) -> Vec<Value> {
    let text = std::fs::read_to_string(path).unwrap();
    serde_json::from_str::<Value>(&text)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

#[test]
fn verify_d5_explicit_point() {
    let out = qpade(&[
        "verify", "d5", "--q", "2/5", "--a", "2,3,5,7", "--m", "1", "--n", "1",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_e6_needs_m() {
    assert_eq!(code(&qpade(&["verify", "e6", "--m", "0", "--n", "1"])), 2);
}

#[test]
fn verify_bad_rational_is_config_error() {
    assert_eq!(code(&qpade(&["verify", "d5", "--q", "2/0", "--a", "2,3,5,7"])), 2);
    assert_eq!(code(&qpade(&["verify", "d5", "--q", "2/5", "--a", "2,3,5"])), 2);
    assert_eq!(code(&qpade(&["verify", "d5", "--q", "1", "--a", "2,3,5,7"])), 2);
}

#[test]
fn verify_solutions_json() {
    let path = scratch("solutions.json");
    let out = qpade(&[
        "verify",
        "solutions",
        "--samples",
        "3",
        "--seed",
        "7",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let recs = records(&path);
    for prefix in [
        "special-value-",
        "special-ratio-",
        "solution-f-at-",
        "solution-f-closed-constant",
    ] {
        assert!(
            recs.iter()
                .any(|r| r["check"].as_str().unwrap().starts_with(prefix)),
            "{prefix}"
        );
    }
    for r in &recs {
        for key in ["check", "params", "status", "lhs", "rhs", "witness"] {
            assert!(r.get(key).is_some(), "record lacks {key}");
        }
        assert_ne!(r["status"], "fail");
    }
}

#[test]
fn verify_directions_small() {
    let out = qpade(&[
        "verify",
        "directions",
        "--m",
        "1",
        "--n",
        "1",
        "--samples",
        "1",
        "--seed",
        "4",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn qrt_orbit_csv() {
    let out = qpade(&["qrt", "--variant", "e6", "--steps", "25", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 26);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), 4);
        assert_eq!(r[0], i.to_string());
        assert!(r[1..].iter().all(|v| v.contains('/')));
        assert_eq!(r[3], rows[0][3]);
    }
}

#[test]
fn qrt_zero_steps_is_one_row() {
    let out = qpade(&["qrt", "--steps", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn qrt_broken_condition() {
    let path = scratch("broken.json");
    let out = qpade(&[
        "qrt",
        "--variant",
        "qp6",
        "--a",
        "1,2,3,4,5,6,7,8",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
    let recs = records(&path);
    let violated = recs
        .iter()
        .find(|r| r["check"] == "qrt-qp6-condition-violated")
        .unwrap();
    assert_eq!(violated["status"], "fail");
}

#[test]
fn qrt_csv_file() {
    let path = scratch("orbit.csv");
    let out = qpade(&[
        "qrt",
        "--steps",
        "4",
        "--seed",
        "9",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 5);
}

#[test]
fn weyl_commands() {
    assert_eq!(
        code(&qpade(&["weyl", "relations", "--samples", "5", "--seed", "1"])),
        0
    );
    assert_eq!(code(&qpade(&["weyl", "relations", "--samples", "0"])), 2);
    assert_eq!(code(&qpade(&["weyl", "directions", "--samples", "2"])), 0);
    let out = qpade(&["weyl", "translation", "--samples", "5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let recs: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let shift = recs
        .iter()
        .filter(|r| r["check"] == "weyl-translation-parameter-shift")
        .count();
    assert_eq!(shift, 5);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(code(&qpade(&["verify", "d7"])), 2);
}

#[test]
fn suite_json_is_deterministic() {
    let (a, b) = (scratch("suite-a.json"), scratch("suite-b.json"));
    for p in [&a, &b] {
        let out = qpade(&[
            "suite",
            "--seed",
            "42",
            "--float-sanity",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let recs = records(&a);
    let float = recs
        .iter()
        .find(|r| r["check"] == "float-sanity-d5-truncated-product")
        .unwrap();
    assert_eq!(float["witness"]["exact"], false);
}
