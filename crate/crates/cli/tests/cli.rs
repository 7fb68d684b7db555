use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahoric")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn ball_radius_zero() {
    let (v, code) = json(&["ball", "--type", "A", "--rank", "1", "--length", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(v["counts"], serde_json::json!([1]));
}

#[test]
fn bijection_a1_has_nine_sequences() {
    let (v, code) = json(&["bijection", "--type", "A1", "--J", "0", "--length", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["sequences"], 9);
}

#[test]
fn sl2_table_values() {
    let out = run(&["sl2", "--q", "2", "--nmax", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let counts: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(counts, vec!["6", "12", "24", "48", "96"]);
    assert!(text.starts_with("q,n,label,count,formula_value,match\n"));
}

#[test]
fn sl2_orbits_and_inconclusive_exit() {
    let (v, code) = json(&["sl2", "--q", "3", "--nmax", "1", "--orbits"]);
    assert_eq!(code, 0);
    let orbits = v["fields"][0]["orbits"].as_array().unwrap();
    let counts: Vec<i64> = orbits.iter().map(|o| o["census"]["count"].as_i64().unwrap()).collect();
    assert_eq!(counts, vec![7, 2, 2]);
    // one precision step cannot confirm stability
    let (v, code) = json(&["sl2", "--q", "3", "--nmax", "1", "--orbits", "--precision", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert_eq!(v["fields"][0]["orbits"][1]["census"]["status"], "inconclusive");
}

#[test]
fn reports_are_deterministic_across_modes() {
    let args = ["sequences", "--type", "G2", "--J", "1", "--length", "6"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let c = run(&seq).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn flags_override_config_file() {
    let cfg = scratch("cfg.json", r#"{"type": "C", "rank": 2, "J": [1], "length": 4, "format": "csv"}"#);
    let cfg = cfg.to_str().unwrap();
    let out = run(&["bijection", "--config", cfg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("spec,J,"));
    let (v, code) = json(&["bijection", "--config", cfg, "--format", "json", "--length", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["max_len"], 2);
    let bad = scratch("bad.json", r#"{"typo": 1}"#);
    assert_eq!(run(&["ball", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cartan_file_and_out_path() {
    let m = scratch("c2.json", r#"{"cartan": [[2,-1,0],[-2,2,-2],[0,-1,2]]}"#);
    let dest = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ball.csv");
    let out = run(&[
        "ball",
        "--cartan-file",
        m.to_str().unwrap(),
        "--length",
        "2",
        "--format",
        "csv",
        "--out",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dest).unwrap();
    assert_eq!(text.lines().count(), 1 + 1 + 3 + 5);
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(run(&["bijection", "--type", "A1", "--J", "0,1", "--length", "3"]).status.code(), Some(2));
    assert_eq!(run(&["ball", "--type", "Q2", "--length", "3"]).status.code(), Some(2));
    assert_eq!(run(&["ball", "--type", "A", "--length", "3"]).status.code(), Some(2));
    assert_eq!(
        run(&["sequences", "--type", "C2", "--J", "0", "--delta", "1,0,2", "--length", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["sl2", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn user_bitorsors() {
    let f = scratch(
        "torsors.json",
        r#"[
            {"name": "D5/Z5", "generators": [[1,2,3,4,0],[0,4,3,2,1]], "subgroup": [[1,2,3,4,0]], "coset_rep": [0,4,3,2,1]},
            {"name": "Z2", "table": [[0,1],[1,0]]}
        ]"#,
    );
    let (v, code) = json(&["bitorsor", "--group-file", f.to_str().unwrap(), "--no-builtins"]);
    assert_eq!(code, 0);
    let t = v["torsors"].as_array().unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t[0]["semidirect_order"], 10);
    // Z/5 under inversion: x -> x + 2l is transitive
    assert_eq!(t[0]["twisted_class_count"], 1);
    assert_eq!(t[1]["twisted_class_count"], 2);
}

#[test]
fn pointcount_values() {
    let (v, code) = json(&["pointcount", "--type", "A1", "--J", "0", "--length", "2", "--q", "2,3"]);
    assert_eq!(code, 0);
    let values: Vec<&Value> = v["pieces"].as_array().unwrap().iter().map(|p| &p["values"]).collect();
    assert_eq!(values[0]["2"], "6");
    assert_eq!(values[1]["3"], "72");
    assert_eq!(values[2]["2"], "24");
}
