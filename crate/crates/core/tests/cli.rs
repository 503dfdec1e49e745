//! The binary's exit-code contract and JSON outputs.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bielliptic"))
}

#[test]
fn census_exit_code_tracks_mismatches() {
    let ok = bin()
        .args(["census", "--example", "6.1a"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v[0]["example"], "6.1a");

    let red = bin()
        .args(["census", "--example", "6.3", "--q", "4"])
        .output()
        .unwrap();
    assert_eq!(red.status.code(), Some(1));
}

#[test]
fn construct_reports_invariants() {
    let out = bin()
        .args([
            "construct",
            "--n",
            "8",
            "--k",
            "auto",
            "--field",
            "gf2^4:0x13",
            "--seed",
            "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["genus"], 9);
    assert_eq!(v["group_order"], 32);
}

#[test]
fn bad_arguments_are_errors() {
    let out = bin()
        .args(["construct", "--n", "8", "--k", "two"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["census", "--example", "9.9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_writes_json() {
    let path = std::env::temp_dir().join(format!("bielliptic-report-{}.json", std::process::id()));
    let out = bin()
        .args(["report", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    // the printed data contains known mismatches
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["main_family"]["genus"], 9);
    assert!(v["census"].as_array().unwrap().len() >= 10);
    std::fs::remove_file(&path).ok();
}
