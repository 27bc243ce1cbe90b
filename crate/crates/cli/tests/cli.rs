use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn qlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlab")).args(args).output().expect("run qlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_without_time(o: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&o.stdout).expect("json output");
    v.as_object_mut().unwrap().remove("wall_time_seconds");
    v
}

/// Parts of a rendered partition, order-insensitive.
fn parts(line: &str) -> BTreeSet<String> {
    line.split('+').map(|s| s.trim().to_string()).collect()
}

#[test]
fn enumerate_six_all_colors() {
    let o = qlab(&["enumerate", "--n", "6", "--profile", "1,1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let got: BTreeSet<BTreeSet<String>> = stdout(&o).lines().map(parts).collect();
    let want: BTreeSet<BTreeSet<String>> = [
        "ABCD_6",
        "AB_2+CD_4",
        "AC_2+BD_4",
        "AD_2+BC_4",
        "BC_2+AD_4",
        "BD_2+AC_4",
        "CD_2+AB_4",
        "A_1+B_2+CD_3",
        "A_1+BC_2+D_3",
        "A_1+BD_2+C_3",
    ]
    .iter()
    .map(|s| parts(s))
    .collect();
    assert_eq!(got, want);
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn enumerate_empty_and_dilated() {
    let o = qlab(&["enumerate", "--scheme", "ab", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(empty)");

    let o = qlab(&["enumerate", "--n", "4", "--dilate", "mod15", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.get("image").is_some()));
}

#[test]
fn count_rows_agree() {
    for what in ["schur", "goellnitz", "thm3", "capparelli"] {
        let o = qlab(&["count", what, "--n-max", "20", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{}", what);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 21);
        assert!(rows.iter().all(|r| r["equal"] == Value::Bool(true)), "{}", what);
    }
    let o = qlab(&["count", "schur", "--n-max", "5", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let lhs: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["lhs"].as_u64().unwrap()).collect();
    assert_eq!(lhs, vec![1, 1, 1, 1, 1, 2]);
}

#[test]
fn exit_codes() {
    assert_eq!(qlab(&["verify", "cases", "--m-max", "2"]).status.code(), Some(0));
    assert_eq!(qlab(&["verify", "cases", "--m-max", "2", "--inject-fault"]).status.code(), Some(1));
    assert_eq!(qlab(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qlab(&["verify", "hfunc", "--order", "0"]).status.code(), Some(2));
    assert_eq!(qlab(&["verify", "hfunc", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(qlab(&["enumerate", "--n", "3", "--scheme", "xyz"]).status.code(), Some(2));
}

#[test]
fn text_output_summary_line() {
    let o = qlab(&["verify", "hfunc", "--order", "6"]);
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("PASS hfunc"));
    assert_eq!(text.lines().last().unwrap(), "1 passed, 0 failed");
}

#[test]
fn injected_fault_reports_mismatch() {
    let o = qlab(&["verify", "key-cells", "--max-total", "2", "--order", "4", "--format", "json", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_without_time(&o);
    assert_eq!(v["summary"]["failed"], 1);
    let failed: Vec<&Value> = v["reports"].as_array().unwrap().iter().filter(|r| r["status"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["first_mismatch"].is_object());
}

#[test]
fn json_is_independent_of_jobs() {
    let args = |jobs: &'static str| {
        vec!["verify", "rho", "--m-max", "5", "--format", "json", "--jobs", jobs]
    };
    let a = qlab(&args("1"));
    let b = qlab(&args("8"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json_without_time(&a), json_without_time(&b));
}

#[test]
fn cache_hit_gives_same_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["verify", "sm-sigma", "--m-max", "2", "--order", "12", "--format", "json", "--cache", d];
    let cold = qlab(&args);
    assert_eq!(cold.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!entries.is_empty());
    let warm = qlab(&args);
    assert_eq!(json_without_time(&cold), json_without_time(&warm));

    // a damaged entry is recomputed
    std::fs::write(&entries[0], "garbage").unwrap();
    let healed = qlab(&args);
    assert_eq!(json_without_time(&cold), json_without_time(&healed));
    let uncached = qlab(&args[..8]);
    assert_eq!(json_without_time(&cold), json_without_time(&uncached));
}
