use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hspace-nilp"))
        .args(args)
        .env_remove("HSPACE_NILP_MEMO_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn nilpotency_of_su8() {
    let v = json(&run(&["nilpotency", "--group", "SU:8"]));
    assert_eq!(v["t"], 2);
    assert_eq!(v["certificate"]["witness"]["monomial"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn nilpotency_of_rank_two() {
    let v = json(&run(&["nilpotency", "--degrees", "3,5"]));
    assert_eq!(v["t"], 1);
    assert!(v.get("certificate").is_none());
}

#[test]
fn even_degree_is_a_parse_error() {
    let out = run(&["nilpotency", "--degrees", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degrees must be odd"));
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_or_conflicting_input_is_a_parse_error() {
    assert_eq!(run(&["nilpotency"]).status.code(), Some(2));
    assert_eq!(
        run(&["nilpotency", "--degrees", "3", "--group", "SU:3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["chain", "--group", "XY:3", "--level", "1"]).status.code(), Some(2));
}

#[test]
fn memo_cap_exit_code() {
    let out = run(&["nilpotency", "--group", "SU:50", "--memo-cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_hspace-nilp"))
        .args(["nilpotency", "--group", "SU:50"])
        .env("HSPACE_NILP_MEMO_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn chain_su50_verified() {
    let v = json(&run(&["chain", "--group", "SU:50", "--level", "2", "--verify"]));
    let cert = &v["certificate"];
    assert_eq!(cert["t"], 3);
    // generator 49 has degree 99; leaves are the nine generators of degrees 3..19
    assert_eq!(cert["witness"]["generator"], 49);
    assert_eq!(cert["witness"]["monomial"], serde_json::json!([1, 2, 3, 4, 5, 6, 7, 8, 9]));
    let coef = cert["witness"]["coef"].as_str().unwrap();
    assert!(coef == "1/1" || coef == "-1/1");
    assert_eq!(v["chain"]["level_degrees"][2], serde_json::json!([99]));
}

#[test]
fn chain_below_threshold() {
    let out = run(&["chain", "--group", "SU:49", "--level", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2n - 1 >= 3^(2l) + 2*3^l"));
}

#[test]
fn chain_sp14() {
    let v = json(&run(&["chain", "--group", "Sp:14", "--level", "1", "--verify"]));
    // generator 14 of Sp(14) has degree 55
    assert_eq!(v["certificate"]["witness"]["generator"], 14);
    assert_eq!(v["certificate"]["witness"]["monomial"], serde_json::json!([1, 2, 3, 4, 5]));
}

#[test]
fn thresholds_table() {
    let v = json(&run(&["threshold", "--family", "su", "--level", "1..3"]));
    let params: Vec<u64> = v["thresholds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["parameter"].as_u64().unwrap())
        .collect();
    assert_eq!(params, vec![8, 50, 392]);
    let v = json(&run(&["threshold", "--family", "sp", "--level", "2"]));
    assert_eq!(v["thresholds"][1]["parameter"], 319);
}

#[test]
fn table_from_case_and_file() {
    let v = json(&run(&["table", "--case", "G2"]));
    assert_eq!(v["t"], 2);
    let dir = std::env::temp_dir().join(format!("hspace-nilp-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    fs::write(&path, r#"{"elements":["0","a","b"],"zero":"0","table":{"a,a":"b"}}"#).unwrap();
    let v = json(&run(&["table", "--file", path.to_str().unwrap()]));
    assert_eq!(v["t"], 3);
    fs::write(&path, r#"{"elements":["0","e"],"zero":"0","table":{"e,e":"e"}}"#).unwrap();
    let v = json(&run(&["table", "--file", path.to_str().unwrap()]));
    assert_eq!(v["t"], "not nilpotent");
    fs::write(&path, r#"{"elements":["0","a"],"zero":"0","table":{"0,a":"a"}}"#).unwrap();
    assert_eq!(run(&["table", "--file", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["table", "--case", "E8"]).status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_agreement() {
    let v = json(&run(&["oracle", "--degrees", "3,5,7,15", "--max-chain", "3"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["t"], 2);
    assert_eq!(v["brute_force"]["t"], 2);
}

#[test]
fn oracle_guard_fails_cleanly() {
    let out = run(&["oracle", "--group", "SU:30", "--max-chain", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["nilpotency", "--group", "SU:50"]);
    let b = run(&["nilpotency", "--group", "SU:50"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["oracle", "--degrees", "1,3,5,7,9,11,13,15", "--seed", "9"]);
    let b = run(&["oracle", "--degrees", "1,3,5,7,9,11,13,15", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("hspace-nilp-out-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = run(&["--output", path.to_str().unwrap(), "nilpotency", "--degrees", "3,5,7,15"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["t"], 2);
    fs::remove_dir_all(&dir).unwrap();
}
