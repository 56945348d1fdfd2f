//! End-to-end tests of the `chev2` binary: spawn the real executable and
//! check its stdout, JSON shapes, and exit codes.

use serde_json::Value;
use std::process::{Command, Output};

fn chev2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chev2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = chev2(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_of(args)).expect("valid JSON output")
}

#[test]
fn roots_csv_is_byte_identical_to_the_bundled_table() {
    let out = stdout_of(&["roots", "--format", "csv"]);
    assert_eq!(out, chev2::e7::ROOTS_CSV);
}

#[test]
fn roots_json_lists_63_rows() {
    let v = json_of(&["roots", "--format", "json"]);
    let rows = v["positive_roots"].as_array().expect("array");
    assert_eq!(rows.len(), 63);
    assert_eq!(rows[0]["label"], 1);
    assert_eq!(rows[41]["sigma"], 2);
}

#[test]
fn roots_rejects_unknown_types() {
    let out = chev2(&["roots", "--type", "E8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
}

#[test]
fn weyl_perm_prints_the_involution_cycles() {
    let out = stdout_of(&["weyl", "perm", "--word", "q1", "--restrict", "1..42"]);
    assert!(out.contains("order:  2"));
    assert!(out.contains(chev2::verify::Q1_CYCLES));
    assert!(out.contains("fixed:  5 8 30 42"));
}

#[test]
fn weyl_perm_accepts_letter_syntax() {
    let out = stdout_of(&["weyl", "perm", "--word", "e,b,c,a,b", "--restrict", "1..42"]);
    assert!(out.contains(chev2::verify::Q1_CYCLES));
}

#[test]
fn weyl_orbits_reports_the_five_bands() {
    let v = json_of(&["weyl", "orbits", "--words", "q1,q2", "--format", "json"]);
    assert_eq!(v["group_order"], 14);
    let orbits = v["orbits"].as_array().expect("array");
    assert_eq!(orbits.len(), 5);
    assert_eq!(v["representatives"], serde_json::json!([1, 8, 15, 29, 36]));
}

#[test]
fn centralizer_solves_to_dimension_4() {
    let v = json_of(&["centralizer", "--format", "json"]);
    assert_eq!(v["dimension"], 4);
    assert_eq!(
        v["free_parameters"],
        serde_json::json!(["b1", "b8", "b15", "b36"])
    );
    let runs = v["form_runs"].as_array().expect("array");
    assert_eq!(runs[3]["form"], "b1 + b8 + b15");
}

#[test]
fn centralizer_report_flag_is_an_alias() {
    let via_report = stdout_of(&["centralizer", "--report", "json"]);
    let via_format = stdout_of(&["centralizer", "--format", "json"]);
    assert_eq!(via_report, via_format);
}

#[test]
fn separability_emits_the_documented_keys() {
    let v = json_of(&["separability", "--format", "json"]);
    assert_eq!(v["dim_lie_C"], 4);
    assert_eq!(v["dim_inf_c"], 5);
    assert_eq!(v["separable"], false);
    assert_eq!(v["witness"], "e1 + e2 + e3 + e4 + e5 + e6 + e7");
}

#[test]
fn gitcheck_noncr_refutes_at_a_equals_1() {
    let v = json_of(&["gitcheck", "noncr", "--a", "1", "--field", "gf2"]);
    assert_eq!(v["conjugate"], false);
    assert_eq!(v["certificate"], "a");
    assert_eq!(v["search_space"], 128);
    assert_eq!(v["candidates_checked"], 128);
    assert_eq!(v["brute_force_agrees"], true);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn gitcheck_noncr_finds_a_witness_at_a_equals_0() {
    let v = json_of(&["gitcheck", "noncr", "--a", "0", "--field", "gf2"]);
    assert_eq!(v["conjugate"], true);
    assert!(v["witness"].is_string());
}

#[test]
fn gitcheck_noncr_over_gf4_with_t_plus_1() {
    let v = json_of(&[
        "gitcheck",
        "noncr",
        "--a",
        "t+1",
        "--field",
        "gf4",
        "--no-brute",
    ]);
    assert_eq!(v["conjugate"], false);
    assert_eq!(v["search_space"], 16384);
    assert!(v["candidates_checked"].is_null());
}

#[test]
fn gitcheck_infinite_classes_forces_equal_parameters() {
    let v = json_of(&["gitcheck", "infinite-classes"]);
    assert_eq!(v["weyl_group_order"], 5040);
    assert_eq!(v["weyl_part_forced_trivial"], true);
    assert_eq!(v["obstructions"], serde_json::json!(["s + t"]));
    assert_eq!(v["relation"], "s + t = 0");
}

#[test]
fn gitcheck_climit_drops_positive_weight_factors() {
    let v = json_of(&[
        "gitcheck",
        "climit",
        "--element",
        "q2 * e36(x) * e1(y)",
        "--format",
        "json",
    ]);
    let element = v["element"].as_str().expect("string");
    let limit = v["limit"].as_str().expect("string");
    assert!(element.contains("e1(y)"));
    // Radical factors always display as e<label>(...); the limit keeps
    // only the Weyl word.
    assert!(
        !limit.contains('('),
        "limit still carries radical factors: {limit}"
    );
}

#[test]
fn modrep_decomposes_over_gf8_and_gf2() {
    let v8 = json_of(&[
        "modrep",
        "decompose",
        "--group",
        "D14-perm7",
        "--field",
        "gf8",
        "--format",
        "json",
    ]);
    assert_eq!(v8["completely_reducible"], true);
    assert_eq!(v8["summand_dims"], serde_json::json!([1, 2, 2, 2]));
    let v2 = json_of(&["modrep", "decompose", "--field", "gf2", "--format", "json"]);
    assert_eq!(v2["summand_dims"], serde_json::json!([1, 6]));
}

#[test]
fn verify_paper_passes_and_exits_zero() {
    let out = chev2(&["verify-paper", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["checks"].as_array().expect("array").len(), 13);
}

#[test]
fn verify_paper_is_deterministic() {
    let first = stdout_of(&["verify-paper", "--format", "json"]);
    let second = stdout_of(&["verify-paper", "--format", "json"]);
    assert_eq!(first, second);
}

#[test]
fn verify_paper_reports_a_corrupted_table_and_exits_one() {
    let dir = std::env::temp_dir().join(format!("chev2-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("bad_roots.csv");
    let corrupted = chev2::e7::ROOTS_CSV.replace("1,1,0,0,1,1,1,0", "1,1,0,0,1,1,1,1");
    assert_ne!(corrupted, chev2::e7::ROOTS_CSV);
    std::fs::write(&path, corrupted).expect("write fixture");

    let out = chev2(&[
        "verify-paper",
        "--format",
        "json",
        "--roots-csv",
        path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["summary"]["failed"], 1);
    assert_eq!(v["checks"][0]["id"], "roots-table");
    assert_eq!(v["checks"][0]["status"], "fail");
    // Every other check still ran and passed.
    for check in &v["checks"].as_array().expect("array")[1..] {
        assert_eq!(check["status"], "pass", "check {} regressed", check["id"]);
    }

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_paper_accepts_a_field_restriction() {
    let out = chev2(&["verify-paper", "--format", "json", "--field", "gf4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let details = v["checks"][9]["details"].as_str().expect("string");
    assert!(details.contains("16384"), "GF(4) count missing: {details}");
    assert!(
        !details.contains("128 "),
        "GF(2) run should be skipped: {details}"
    );
}
