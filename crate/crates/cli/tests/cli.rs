use std::path::PathBuf;
use std::process::{Command, Output};

fn dsemion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsemion")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dsemion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn groundstate_verify_passes_and_records_convention() {
    let out = dsemion(&["groundstate", "verify", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["convention"]["requested"], "auto");
    assert_eq!(v["convention"]["resolved"], "loop_count");
    assert_eq!(v["geometry"]["n"], 1);
    assert_eq!(v["geometry"]["outer_legs"], 6);
    assert_eq!(v["result"]["ground_space"]["dimension"], 1);
}

#[test]
fn wrong_convention_fails_with_exit_one() {
    let out = dsemion(&["groundstate", "verify", "--n", "2", "--convention", "region_components"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["groundstate", "verify", "--bogus"][..],
        &["anyons", "smatrix", "--n", "0"],
        &["anyons", "braid"],
        &["purity", "parity", "--format", "xml"],
        &["category", "check", "--input", "/nonexistent/data.json"],
    ] {
        assert_eq!(dsemion(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_byte_identical_for_fixed_seed() {
    let a = dsemion(&["purity", "schmidt", "--n", "1", "--seed", "9"]);
    let b = dsemion(&["purity", "schmidt", "--n", "1", "--seed", "9", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 9);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("parity.json");
    let out = dsemion(&["purity", "parity", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["tally"]["soups"], 64);
}

#[test]
fn csv_table_for_category_check() {
    let out = dsemion(&["category", "check", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,checked,failures"));
    assert_eq!(lines.next(), Some("pentagon,256,0"));
}

#[test]
fn category_check_reads_input_and_rejects_broken_data() {
    let good = dsemion::category::AnyonData::toric_code();
    let path = scratch("toric.json");
    std::fs::write(&path, serde_json::to_string(&good).unwrap()).unwrap();
    let out = dsemion(&["category", "check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["reference_gauge"], serde_json::Value::Null);

    let mut bad = dsemion::category::AnyonData::double_semion();
    bad.f[16 + 4 + 1] = 0;
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = dsemion(&["category", "check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["result"]["pentagon"]["failures"].as_u64().unwrap() > 0);
}

#[test]
fn smatrix_reports_the_half_matrix() {
    let out = dsemion(&["anyons", "smatrix", "--n", "3", "--convention", "loop_count"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["convention"]["passing"], serde_json::Value::Null);
    assert_eq!(v["result"]["s_matrix"][1][1], "-1/2");
    assert_eq!(v["result"]["s_matrix"][3][3], "1/2");
}

#[test]
fn tqd_compare_finds_a_unique_identification() {
    let out = dsemion(&["tqd", "compare"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["matching_relabellings"].as_array().unwrap().len(), 1);
}
