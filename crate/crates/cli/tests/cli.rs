//! Black-box tests of the `svaudit` binary: flag handling, JSON/CSV shapes,
//! exit codes, and the documented example invocations.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn svaudit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svaudit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn svaudit_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svaudit"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = svaudit(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/tests/data/{name}"))
}

fn temp_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write");
    f
}

#[test]
fn analyze_reports_the_three_variable_example() {
    let r = json_ok(&["analyze", "--tt", "01010011", "--instance", "101"]);
    assert_eq!(r["function"]["arity"], 3);
    assert_eq!(r["instance"]["point"], "1,0,1");
    assert_eq!(r["instance"]["class"], 0);
    let sv3 = &r["shapley"][2];
    assert_eq!(sv3["feature"], 3);
    assert_eq!(sv3["numerator"], 1);
    assert_eq!(sv3["denominator"], 8);
    assert_eq!(r["relevancy"]["irrelevant"], serde_json::json!([3]));
    assert_eq!(r["issues"]["i1"], true);
    assert_eq!(r["issues"]["i2"], false);
    assert_eq!(r["issues"]["i1_witness"], 3);
    assert_eq!(r["axps"], serde_json::json!([[1, 2]]));
    assert_eq!(r["cxps"], serde_json::json!([[1], [2]]));
    assert!(r.get("diagnostics").is_none(), "no --topk, no diagnostics");
}

#[test]
fn analyze_topk_flags_an_irrelevant_top_feature() {
    let r = json_ok(&[
        "analyze",
        "--tt",
        "0110101111111111",
        "--instance",
        "0001",
        "--topk",
        "1",
    ]);
    assert_eq!(r["ranking"][0], 1);
    assert!(r["relevancy"]["irrelevant"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(1)));
    assert_eq!(r["diagnostics"]["k"], 1);
    assert_eq!(r["diagnostics"]["exists_i_in_topk"], true);
    assert_eq!(r["issues"]["i2"], true);
}

#[test]
fn analyze_accepts_comma_separated_instances() {
    let compact = json_ok(&["analyze", "--tt", "01010011", "--instance", "101"]);
    let commas = json_ok(&["analyze", "--tt", "01010011", "--instance", "1,0,1"]);
    assert_eq!(compact, commas);
}

#[test]
fn analyze_signed_ranking_orders_by_raw_value() {
    let abs = json_ok(&["analyze", "--tt", "0110101111111111", "--instance", "0001"]);
    let signed = json_ok(&[
        "analyze",
        "--tt",
        "0110101111111111",
        "--instance",
        "0001",
        "--ranking",
        "signed",
    ]);
    assert_eq!(abs["ranking"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(signed["ranking"], serde_json::json!([2, 3, 4, 1]));
}

#[test]
fn analyze_rejects_constant_functions() {
    let out = svaudit(&["analyze", "--tt", "0000", "--instance", "00"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("constant"), "stderr: {stderr}");
}

#[test]
fn analyze_rejects_arity_mismatch() {
    let out = svaudit(&["analyze", "--tt", "01010011", "--instance", "10"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn analyze_rejects_bad_instance_characters() {
    let out = svaudit(&["analyze", "--tt", "01010011", "--instance", "1x1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn analyze_requires_exactly_one_function_source() {
    let neither = svaudit(&["analyze", "--instance", "101"]);
    assert_eq!(exit_code(&neither), 2);
    let both = svaudit(&[
        "analyze",
        "--tt",
        "01010011",
        "--circuit",
        "whatever.cir",
        "--instance",
        "101",
    ]);
    assert_eq!(exit_code(&both), 2);
}

#[test]
fn analyze_reads_circuits() {
    let path = fixture("k1.cir");
    let r = json_ok(&[
        "analyze",
        "--circuit",
        path.to_str().unwrap(),
        "--instance",
        "1000",
    ]);
    assert_eq!(r["function"]["truth_table"], "0000000000011000");
    let sv1 = &r["shapley"][0];
    assert_eq!(sv1["numerator"], 1);
    assert_eq!(sv1["denominator"], 12);
    assert_eq!(r["issues"]["i1"], true);
    assert_eq!(r["issues"]["i4"], true);
}

#[test]
fn analyze_honors_the_arity_cap_env_var() {
    // A 5-variable table (feature 1 ignored, rest nontrivial).
    let tt = "01010011010100110101001101010011";
    let args = ["analyze", "--tt", tt, "--instance", "10101"];
    let blocked = svaudit_env(&args, "AUDIT_MAX_ARITY", "4");
    assert_eq!(exit_code(&blocked), 2);
    let stderr = String::from_utf8_lossy(&blocked.stderr);
    assert!(stderr.contains("AUDIT_MAX_ARITY"), "stderr: {stderr}");

    let allowed = svaudit_env(&args, "AUDIT_MAX_ARITY", "5");
    assert!(allowed.status.success());

    let zero = svaudit_env(&args, "AUDIT_MAX_ARITY", "0");
    assert_eq!(exit_code(&zero), 2);
    let junk = svaudit_env(&args, "AUDIT_MAX_ARITY", "many");
    assert_eq!(exit_code(&junk), 2);
}

#[test]
fn scan_one_variable_has_no_issues() {
    let r = json_ok(&["scan", "--vars", "1"]);
    assert_eq!(r["functions_total"], 4);
    assert_eq!(r["functions_scanned"], 2);
    for key in ["pct_i1", "pct_i2", "pct_i3", "pct_i4"] {
        assert_eq!(r[key], 0.0, "{key}");
    }
    assert_eq!(r["instances_all_irrelevant_dominate"], 0);
}

#[test]
fn scan_emits_csv_when_asked() {
    let out = svaudit(&["scan", "--vars", "2", "--out", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("m,pct_i1,pct_i2,pct_i3,pct_i4,functions_total"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("2,57.14,0.00,0.00,0.00,16,14,8,"), "row: {row}");
    assert!(lines.next().is_none());
}

#[test]
fn scan_is_reproducible_across_jobs() {
    let one = svaudit(&["scan", "--vars", "3", "--jobs", "1"]);
    let four = svaudit(&["scan", "--vars", "3", "--jobs", "4"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn scan_can_include_the_constant_functions() {
    let r = json_ok(&["scan", "--vars", "2", "--include-constants"]);
    assert_eq!(r["functions_scanned"], 16);
    assert_eq!(r["instances_total"], 64);
    // The constants carry no explanations, so the issue tallies are unchanged.
    assert_eq!(r["with_i1"], 8);
}

#[test]
fn scan_rejects_arity_five() {
    let out = svaudit(&["scan", "--vars", "5"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_rejects_topk_beyond_arity() {
    let out = svaudit(&["scan", "--vars", "2", "--topk", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn compare_scores_the_exact_floats_clean() {
    let attr = temp_file("1,-0.25\n2,-0.375\n3,0.125\n");
    let r = json_ok(&[
        "compare",
        "--tt",
        "01010011",
        "--instance",
        "101",
        "--attr",
        attr.path().to_str().unwrap(),
    ]);
    assert_eq!(r["wrong"], 0);
    assert_eq!(r["total"], 3);
    assert_eq!(r["reference_ranking"], serde_json::json!([2, 1, 3]));
    assert_eq!(r["candidate_ranking"], serde_json::json!([2, 1, 3]));
}

#[test]
fn compare_tolerates_a_header_line_and_any_row_order() {
    let attr = temp_file("feature,score\n3,0.125\n1,-0.25\n2,-0.375\n");
    let r = json_ok(&[
        "compare",
        "--tt",
        "01010011",
        "--instance",
        "101",
        "--attr",
        attr.path().to_str().unwrap(),
    ]);
    assert_eq!(r["wrong"], 0);
}

#[test]
fn compare_counts_a_fully_reversed_candidate_as_all_wrong() {
    // Reference magnitudes: f2 (3/8) > f1 (1/4) > f3 (1/8).
    let attr = temp_file("1,0.2\n2,0.1\n3,0.3\n");
    let r = json_ok(&[
        "compare",
        "--tt",
        "01010011",
        "--instance",
        "101",
        "--attr",
        attr.path().to_str().unwrap(),
    ]);
    assert_eq!(r["wrong"], r["total"]);
    assert_eq!(r["total"], 3);
}

#[test]
fn compare_flags_an_ascending_candidate_against_one_dominant_feature() {
    // Reference: (-11/64, 23/192, 23/192, 23/192) — feature 1 strictly
    // dominates the other three in magnitude, which are mutually tied.
    let attr = temp_file("1,0.1\n2,0.2\n3,0.3\n4,0.4\n");
    let r = json_ok(&[
        "compare",
        "--tt",
        "0110101111111111",
        "--instance",
        "0001",
        "--attr",
        attr.path().to_str().unwrap(),
    ]);
    assert_eq!(r["wrong"], 3);
    assert_eq!(r["total"], 3);
    assert_eq!(r["reference_ranking"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(r["candidate_ranking"], serde_json::json!([4, 3, 2, 1]));
}

#[test]
fn compare_rejects_malformed_attribution_files() {
    for bad in [
        "1,abc\n2,0.5\n3,0.5\n",      // unparsable score
        "1,0.1\n2,0.2\n",             // missing feature 3
        "1,0.1\n1,0.2\n3,0.3\n",      // duplicate feature
        "1,0.1\n2,inf\n3,0.3\n",      // non-finite score
    ] {
        let attr = temp_file(bad);
        let out = svaudit(&[
            "compare",
            "--tt",
            "01010011",
            "--instance",
            "101",
            "--attr",
            attr.path().to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 2, "attr: {bad:?}");
    }
}

#[test]
fn compare_rejects_a_missing_file() {
    let out = svaudit(&[
        "compare",
        "--tt",
        "01010011",
        "--instance",
        "101",
        "--attr",
        "/no/such/file.csv",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn circuit_check_reports_structure_and_table() {
    let r = json_ok(&["circuit-check", fixture("k1.cir").to_str().unwrap()]);
    assert_eq!(r["arity"], 4);
    assert_eq!(r["decomposable"], true);
    assert_eq!(r["deterministic"], true);
    assert_eq!(r["constant"], false);
    assert_eq!(r["truth_table"], "0000000000011000");
    assert_eq!(r["ones"], 2);

    let r2 = json_ok(&["circuit-check", fixture("k2.cir").to_str().unwrap()]);
    assert_eq!(r2["truth_table"], "0000000000011011");
    assert_eq!(r2["deterministic"], true);
}

#[test]
fn circuit_check_rejects_bad_files() {
    let missing = svaudit(&["circuit-check", "/no/such/file.cir"]);
    assert_eq!(exit_code(&missing), 2);

    let truncated = temp_file("n1 VAR 1\n");
    let out = svaudit(&["circuit-check", truncated.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("ROOT"), "stderr: {stderr}");
}
