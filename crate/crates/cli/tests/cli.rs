//! End-to-end CLI behaviour: output shapes, exit codes, JSON reports,
//! and determinism.

use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tropkap")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn perm_on_the_documented_witness_submatrix() {
    let out = run(&[
        "perm",
        &data("A.tmat"),
        "--rows",
        "1,2,4,6",
        "--cols",
        "1,4,5,6",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("value=1 count=1"), "{text}");
    assert!(text.contains("witnesses=[1,3,2,4]"), "{text}");
}

#[test]
fn perm_on_a_single_entry_file() {
    let out = run(&["perm", &fixture("one.tmat")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("value=7 count=1"));
}

#[test]
fn perm_rejects_non_square_input_with_exit_2() {
    let out = run(&["perm", &fixture("nonsquare.tmat")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not square"));
}

#[test]
fn ragged_files_exit_2_naming_the_line() {
    let out = run(&["troprank", &fixture("ragged.tmat")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["troprank", "no-such-file.tmat"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn troprank_cases() {
    let out = run(&["troprank", &data("A.tmat")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("rank=4 "), "{}", stdout(&out));

    let out = run(&["troprank", &fixture("one.tmat")]);
    assert!(stdout(&out).starts_with("rank=1"));

    let out = run(&["troprank", &fixture("zeros3.tmat")]);
    assert!(stdout(&out).starts_with("rank=1"));
}

#[test]
fn singular_reports_both_ways() {
    let out = run(&["singular", &fixture("zeros2.tmat")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("singular=true"));

    let out = run(&[
        "singular",
        &data("A.tmat"),
        "--rows",
        "1,2,4,6",
        "--cols",
        "1,4,5,6",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("singular=false"));
}

#[test]
fn selector_flags_must_be_sane() {
    let out = run(&["perm", &data("A.tmat"), "--rows", "1,2"]);
    assert_eq!(code(&out), 2);
    let out = run(&["perm", &data("A.tmat"), "--rows", "2,1", "--cols", "1,2"]);
    assert_eq!(code(&out), 2);
    let out = run(&["perm", &data("A.tmat"), "--rows", "1,9", "--cols", "1,2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn deg_of_series_literals() {
    let out = run(&["deg", "1 - t^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "deg=0");

    let out = run(&["deg", "0"]);
    assert_eq!(stdout(&out).trim(), "deg=inf");

    let out = run(&["deg", "-t^4"]);
    assert_eq!(stdout(&out).trim(), "deg=4");

    let out = run(&["deg", "t^(1/2) + 2*t"]);
    assert_eq!(stdout(&out).trim(), "deg=1/2");

    let out = run(&["deg", "2tt"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn deg_matrix_of_m0_prints_a() {
    let out = run(&["deg", "--matrix", &data("M0.pmat")]);
    assert_eq!(code(&out), 0);
    let expected = std::fs::read_to_string(data("A.tmat"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    assert_eq!(stdout(&out).trim(), expected.trim());
}

#[test]
fn deg_matrix_with_zero_entry_exits_1() {
    let out = run(&["deg", "--matrix", &fixture("zero2.pmat")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("(1,1)"));
}

#[test]
fn pdet_and_prank() {
    let out = run(&["pdet", &fixture("id3.pmat")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "det=1");

    let out = run(&["prank", &data("M0.pmat")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "rank=5");

    let out = run(&["prank", &fixture("id3.pmat")]);
    assert_eq!(stdout(&out).trim(), "rank=3");

    let out = run(&["prank", &fixture("zero2.pmat")]);
    assert_eq!(stdout(&out).trim(), "rank=0");
}

#[test]
fn liftcheck_accepts_m0_and_rejects_bad_lifts() {
    let out = run(&["liftcheck", &data("A.tmat"), &data("M0.pmat")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "lift=true");

    // dimension mismatch
    let out = run(&["liftcheck", &fixture("one.tmat"), &data("M0.pmat")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("lift=false"));

    // zero entry named by cell
    let out = run(&[
        "liftcheck",
        &fixture("zeros2.tmat"),
        &fixture("zeroentry.pmat"),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("(1,1)"), "{}", stdout(&out));
}

#[test]
fn kapbound_brackets_the_kapranov_rank() {
    let out = run(&["kapbound", &data("A.tmat"), &data("M0.pmat")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "lower=4 upper=5");

    let out = run(&["kapbound", &fixture("base2.tmat"), &fixture("lift2.pmat")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "lower=2 upper=2");

    // not a lift -> verification failure
    let out = run(&["kapbound", &data("A.tmat"), &fixture("ones6.pmat")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn certify_reports_the_delta_case() {
    let out = run(&["certify", &data("M0.pmat")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("delta=1 case=eq"), "{text}");
    assert!(text.contains("deg_H61=2"), "{text}");

    let out = run(&["certify", &data("M0_delta0.pmat")]);
    let text = stdout(&out);
    assert!(text.contains("delta=0 case=lt"), "{text}");
    assert!(text.contains("deg_H25=2"), "{text}");

    let out = run(&["certify", &data("M0_delta2.pmat")]);
    let text = stdout(&out);
    assert!(text.contains("delta=2 case=gt"), "{text}");
    assert!(text.contains("deg_H25=3"), "{text}");

    // lifts a different matrix -> exit 1
    let out = run(&["certify", &fixture("ones6.pmat")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not a lift"), "{}", stdout(&out));
}

#[test]
fn verify_example_prints_five_pass_lines() {
    let out = run(&["verify-example"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("PASS ")).count(),
        5,
        "{text}"
    );
    assert!(text.trim_end().ends_with("verify-example: ok"));
}

#[test]
fn verify_example_json_reports_each_check() {
    let out = run(&["verify-example", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], serde_json::json!(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 5);
    for check in v["checks"].as_array().unwrap() {
        assert_eq!(check["pass"], serde_json::json!(true));
    }
}

#[test]
fn json_reports_are_valid_and_agree_with_human_output() {
    let out = run(&["troprank", &data("A.tmat"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], serde_json::json!(4));

    let out = run(&["certify", &data("M0.pmat"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["delta"], serde_json::json!("1"));
    assert_eq!(v["case"], serde_json::json!("eq"));
    assert_eq!(v["deg_h61"], serde_json::json!("2"));
    assert_eq!(v["rank_lower_bound"], serde_json::json!(5));

    let out = run(&["perm", &fixture("one.tmat"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], serde_json::json!("7"));
    assert_eq!(v["optimal_count"], serde_json::json!(1));
}

#[test]
fn fuzz_lifts_is_deterministic_byte_for_byte() {
    let first = run(&["fuzz-lifts", "--trials", "25", "--seed", "7"]);
    let second = run(&["fuzz-lifts", "--trials", "25", "--seed", "7"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("all_pass=true"));

    let other_seed = run(&["fuzz-lifts", "--trials", "25", "--seed", "8"]);
    assert_ne!(first.stdout, other_seed.stdout);
}

#[test]
fn fuzz_lifts_rejects_zero_trials() {
    let out = run(&["fuzz-lifts", "--trials", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fuzz_lifts_validates_the_step() {
    let out = run(&["fuzz-lifts", "--trials", "1", "--exponent-step", "0"]);
    assert_eq!(code(&out), 2);
    let out = run(&["fuzz-lifts", "--trials", "1", "--exponent-step", "x"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn threshold_flag_is_honored() {
    let out = run(&["perm", &data("A.tmat"), "--threshold", "5"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("threshold"), "{}", stderr(&out));

    let out = run(&["perm", &data("A.tmat"), "--threshold", "6"]);
    assert_eq!(code(&out), 0);

    let out = run(&["prank", &data("M0.pmat"), "--threshold", "5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_subcommands_and_conflicting_deg_args_exit_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);

    let out = run(&["deg", "1 + t", "--matrix", &data("M0.pmat")]);
    assert_eq!(code(&out), 2);

    let out = run(&["deg"]);
    assert_eq!(code(&out), 2);
}
