use std::path::Path;
use std::process::{Command, Output};

use mub_core::mub::{build_mub_set, MubSetJson, StateJson};
use mub_core::search::qutrit_saturating_states;
use serde_json::Value;

fn mub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mub"))
        .args(args)
        .env_remove("MUB_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_state(dir: &Path, name: &str, state: &StateJson) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(state).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_round_trips() {
    for d in [2u32, 5] {
        let out = mub(&["gen", &d.to_string()]);
        assert!(out.status.success());
        let parsed: MubSetJson = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(parsed.into_mub_set().unwrap(), build_mub_set(d).unwrap());
    }
}

#[test]
fn profile_reads_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let qutrit = write_state(dir.path(), "q.json", &StateJson::from(&qutrit_saturating_states()[0]));
    let v = json(&mub(&["profile", "3", "--state", &qutrit]));
    assert_eq!(v["sizes"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(v["total"], 8);

    let set = build_mub_set(5).unwrap();
    let ket0 = write_state(dir.path(), "z.json", &StateJson::from(&set.state(0, 0)));
    let v = json(&mub(&["profile", "5", "--state", &ket0]));
    assert_eq!(v["sizes"], serde_json::json!([1, 5, 5, 5, 5, 5]));
    assert_eq!(v["pairs_hold"], true);

    // wrong dimension for the file, an empty state, and a missing file
    assert_eq!(mub(&["profile", "7", "--state", &ket0]).status.code(), Some(3));
    let empty = dir.path().join("e.json");
    std::fs::write(&empty, r#"{"dim": 3, "entries": []}"#).unwrap();
    assert_eq!(mub(&["profile", "3", "--state", empty.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(mub(&["profile", "3", "--state", "/nonexistent.json"]).status.code(), Some(3));
}

#[test]
fn malformed_state_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"dim\": 3,\n  \"entries\": [[\"1\"], }\n").unwrap();
    let out = mub(&["profile", "3", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(mub(&["gen", "4"]).status.code(), Some(3));
    assert_eq!(mub(&["search-saturation", "3"]).status.code(), Some(3));
    assert_eq!(mub(&["search-saturation", "17"]).status.code(), Some(3));
    assert_eq!(mub(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(mub(&["table1", "--max-d", "23"]).status.code(), Some(3));
    assert_eq!(mub(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_passes_for_small_primes() {
    for d in ["2", "3", "5"] {
        let v = json(&mub(&["verify-all", d, "--samples", "200"]));
        assert_eq!(v["passed"], true);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
}

#[test]
fn saturation_output_is_independent_of_workers() {
    let run = |w: &str| {
        let out = mub(&["--workers", w, "search-saturation", "7"]);
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let v: Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(v["hit_count"], 0);
    assert!(v.get("elapsed_ms").is_none());
    assert!(json(&mub(&["--timings", "search-saturation", "5"])).get("elapsed_ms").is_some());
}

#[test]
fn checkpoint_resume_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let ck = ck.to_str().unwrap();
    let partial = json(&mub(&["search-saturation", "7", "--checkpoint", ck, "--stop-after", "50", "--batch", "10"]));
    assert_eq!(partial["complete"], false);
    assert_eq!(partial["completed_items"], 50);
    let resumed = json(&mub(&["search-saturation", "7", "--checkpoint", ck]));
    let fresh = json(&mub(&["search-saturation", "7"]));
    assert_eq!(resumed["complete"], true);
    for key in ["candidates", "hit_count", "pair_stats", "work_items"] {
        assert_eq!(resumed[key], fresh[key], "{key}");
    }
    // the same checkpoint under different flags or a different d is refused
    assert_eq!(mub(&["search-saturation", "7", "--symmetry", "off", "--checkpoint", ck]).status.code(), Some(4));
    assert_eq!(mub(&["search-saturation", "5", "--checkpoint", ck]).status.code(), Some(4));
    std::fs::write(ck, "{ not json").unwrap();
    assert_eq!(mub(&["search-saturation", "7", "--checkpoint", ck]).status.code(), Some(4));
}

#[test]
fn table1_rows_and_formats() {
    let v = json(&mub(&["table1", "--max-d", "7"]));
    let rows = v["rows"].as_array().unwrap();
    let got: Vec<(u64, &str, &str)> = rows
        .iter()
        .map(|r| (r["d"].as_u64().unwrap(), r["t"].as_str().unwrap(), r["achievable"].as_str().unwrap()))
        .collect();
    assert_eq!(got, [(2, "9/2", "no"), (3, "8", "yes"), (5, "18", "no"), (7, "32", "no")]);
    let ts: Vec<Value> = rows.iter().map(|r| r["t_s"].clone()).collect();
    assert_eq!(ts, [5, 8, 22, 44].map(Value::from));

    let csv = mub(&["--format", "csv", "table1", "--max-d", "3"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().next().unwrap().starts_with("d,"));

    let unknown = json(&mub(&["table1", "--max-d", "13", "--no-search"]));
    assert_eq!(unknown["rows"][5]["achievable"], "unknown");
}

#[test]
fn small_commands() {
    let v = json(&mub(&["classify-d3"]));
    assert_eq!(v["count"], 9);
    let v = json(&mub(&["verify-monomial", "5", "--j", "2", "--k", "4"]));
    assert_eq!(v["decompositions"].as_array().unwrap().len(), 1);
    let v = json(&mub(&["minors", "5", "--matrix", "H3*H2"]));
    assert_eq!(v["all_nonzero"], true);
    let v = json(&mub(&["minors", "11", "--samples", "200", "--matrix", "F"]));
    assert_eq!(v["all_nonzero"], true);
    let v = json(&mub(&["sharp-bound", "5"]));
    assert_eq!(v["t_s"], 22);
    assert_eq!(v["witness_count"], 300);
    assert!(v.get("witnesses").is_none());
}
