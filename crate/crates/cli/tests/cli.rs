use std::process::{Command, Output};

use serde_json::Value;

fn qgidem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgidem")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = qgidem(&a);
    let v: Value =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qgidem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_group_algebra_of_s3() {
    let (v, code) = json(&["classify", "ga:S3", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["states"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["haar"], 3);
    assert_eq!(v["passed"], true);
}

#[test]
fn lattice_of_function_algebra_of_s3() {
    let (v, code) = json(&["lattice", "fn:S3", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["strict_pairs"], 9);
    assert_eq!(v["result"]["oracle_order_mismatches"], 0);
    let covers: usize = v["result"]["covers"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).sum();
    assert_eq!(covers, 8);
}

#[test]
fn quotient_by_alternating_subgroup() {
    // A3 = {id, (012), (021)} in lexicographic permutation order
    let (v, code) = json(&["quotient", "fn:S3", "--state", "subgroup:0,3,4"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["quotient"]["quotient"]["dim"], 3);
    assert_eq!(v["result"]["homogeneous"]["fixed_dim"], 2);
    assert_eq!(v["result"]["coaction"]["density_rank"], 12);
}

#[test]
fn quotient_of_non_haar_state_is_an_error() {
    let out = qgidem(&["quotient", "ga:S3", "--state", "subgroup:0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an ideal"));
}

#[test]
fn walk_reaches_haar_state() {
    let (v, code) = json(&["walk", "fn:Z4", "--state", "coeffs:0.4,0.3,0.2,0.1", "--steps", "2000"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["limit_is_haar_state"], true);
    assert!(v["result"]["max_k_times_distance"].as_f64().unwrap() <= 10.0);
}

#[test]
fn export_then_validate_round_trip() {
    let path = tmp("d4.json");
    let out = qgidem(&["export", "dual:ga:D4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let (v, code) = json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 8);
    let (w, _) = json(&["validate", "dual:ga:D4"]);
    assert_eq!(v["qg"], w["qg"]);
}

#[test]
fn idempotents_index_and_state_file() {
    let (v, code) = json(&["idempotents", "fn:Z4", "--oracle", "--starts", "100"]);
    assert_eq!(code, 0);
    let found = v["result"]["found"].as_array().unwrap();
    assert_eq!(found.len(), 3);
    let path = tmp("state.json");
    std::fs::write(&path, serde_json::to_string(&found[1]).unwrap()).unwrap();
    let (a, _) = json(&["walk", "fn:Z4", "--state", path.to_str().unwrap(), "--steps", "3"]);
    let (b, _) = json(&["walk", "fn:Z4", "--state", "1", "--starts", "100", "--steps", "3"]);
    assert_eq!(a["result"]["initial"], b["result"]["initial"]);
}

#[test]
fn seed_from_environment() {
    let run = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_qgidem"))
            .args(["idempotents", "fn:Z3", "--starts", "20", "--format", "json"])
            .env("QGIDEM_SEED", seed)
            .output()
            .unwrap();
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["result"]["found"].clone()
    };
    assert_eq!(run("7"), run("7"));
}

#[test]
fn errors_exit_with_status_two() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\n  \"dim\": 2,\n  \"mult\": [1, 2\n}").unwrap();
    let out = qgidem(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    assert_eq!(qgidem(&["validate", "fn:Z99"]).status.code(), Some(2));
    assert_eq!(qgidem(&["idempotents", "fn:Z3", "--starts", "0"]).status.code(), Some(2));
}

#[test]
fn failed_checks_exit_with_status_one() {
    let path = tmp("z2.json");
    assert!(qgidem(&["export", "fn:Z2", "--out", path.to_str().unwrap()]).status.success());
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["haar"] = serde_json::json!([[0.6, 0.0], [0.4, 0.0]]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let (v, code) = json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert_eq!(qgidem(&["classify", path.to_str().unwrap()]).status.code(), Some(2));
}
