//! End-to-end checks of the binary: exit codes, report determinism, and
//! the generator-file round trip.

use std::process::{Command, Output};

use bn_strings::report::{ReportDocument, UnravelDocument};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bn-strings"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("the binary exits normally")
}

#[test]
fn construct_writes_a_file_verify_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("thm12-n5.gen");
    let out = run(&["construct", "thm12", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree=10 rank=4 family=thm12"));
    assert_eq!(lines.count(), 4);

    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn construct_rejects_even_thm12_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("never-written.gen");
    let out = run(&["construct", "thm12", "--n", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("n must be odd and ≥ 5"));
    assert!(!path.exists());
}

#[test]
fn construct_rejects_unknown_families() {
    let out = run(&["construct", "thm99", "--n", "5", "--out", "/tmp/x.gen"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown family"));
}

#[test]
fn construct_reports_io_failures() {
    let out = run(&[
        "construct",
        "thm12",
        "--n",
        "5",
        "--out",
        "/nonexistent-dir/x.gen",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("cannot write"));
}

#[test]
fn verify_family_emits_a_parsable_document() {
    let out = run(&["verify", "thm12", "--n", "5", "--format", "json"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let doc = ReportDocument::from_json(&stdout(&out)).unwrap();
    assert!(doc.all_passed);
    assert_eq!(doc.schlafli, vec![6, 6, 4]);
    assert_eq!(doc.group_order, "3840");
    assert_eq!(doc.unravelled.unwrap().unravelled, false);
    assert!(doc.timing.is_none());
}

#[test]
fn verify_rejects_small_thm13_parameters() {
    let out = run(&["verify", "thm13", "--n", "7"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("n must be ≥ 8"));
}

#[test]
fn verify_requires_n_for_family_names() {
    let out = run(&["verify", "thm12"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("--n is required"));
}

#[test]
fn missing_generator_files_are_io_errors() {
    let out = run(&["verify", "/no/such/file.gen"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let base = run(&["verify", "thm12", "--n", "5", "--format", "json"]);
    assert_eq!(exit_code(&base), 0);
    for args in [
        vec!["verify", "thm12", "--n", "5", "--format", "json"],
        vec!["verify", "thm12", "--n", "5", "--format", "json", "--threads", "1"],
        vec!["verify", "thm12", "--n", "5", "--format", "json", "--threads", "4"],
    ] {
        let out = run(&args);
        assert_eq!(exit_code(&out), 0);
        assert_eq!(out.stdout, base.stdout, "args: {args:?}");
    }
}

#[test]
fn the_structured_format_token_is_accepted_in_long_form() {
    let short = run(&["verify", "thm12", "--n", "5", "--format", "json"]);
    let long = run(&[
        "verify",
        "thm12",
        "--n",
        "5",
        "--format",
        "json-like-structured",
    ]);
    assert_eq!(exit_code(&long), 0);
    assert_eq!(long.stdout, short.stdout);
}

#[test]
fn timing_is_attached_only_on_request() {
    let out = run(&["verify", "thm12", "--n", "5", "--format", "json", "--timing"]);
    assert_eq!(exit_code(&out), 0);
    let doc = ReportDocument::from_json(&stdout(&out)).unwrap();
    assert!(doc.timing.is_some());
}

#[test]
fn skip_unravel_omits_the_quotient_checks() {
    let out = run(&["verify", "thm12", "--n", "5", "--format", "json", "--skip-unravel"]);
    assert_eq!(exit_code(&out), 0);
    let doc = ReportDocument::from_json(&stdout(&out)).unwrap();
    assert!(doc.unravelled.is_none());
    assert!(doc.all_passed);
}

#[test]
fn a_tuple_failing_the_intersection_property_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.gen");
    std::fs::write(&path, "degree=4 rank=3 family=custom\n(1,2)\n(1,2)(3,4)\n(3,4)\n").unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("cstring (full): no"));
    assert!(text.contains("J={1} K={2,3}"));
    assert!(text.contains("overall: FAIL"));
}

#[test]
fn a_tuple_violating_the_string_condition_names_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nonstring.gen");
    std::fs::write(&path, "degree=6 rank=3 family=custom\n(1,2)\n(3,4)\n(1,3)\n").unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("generators 1 and 3"));
}

#[test]
fn malformed_generator_files_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("malformed.gen");
    std::fs::write(&path, "degree=four rank=1 family=custom\n(1,2)\n").unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unravel_names_the_obstruction_on_the_boundary() {
    let out = run(&["unravel", "thm12", "--n", "5"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("unravelled: no"));
    assert!(text.contains("obstruction: omega0"));
    assert!(text.contains("omega0 (index 1920): quotient-is-cstring"));
}

#[test]
fn unravel_reports_seven_verdicts_for_the_even_case() {
    let out = run(&["unravel", "thm13", "--n", "8", "--format", "json"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let doc = UnravelDocument::from_json(&stdout(&out)).unwrap();
    assert!(doc.unravelled.unravelled);
    assert_eq!(doc.unravelled.checks.len(), 7);
    assert_eq!(doc.expected_unravelled, Some(true));
}

#[test]
fn oracle_passes_at_n5() {
    let out = run(&["oracle", "--n", "5"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("comparisons match"));
}

#[test]
fn oracle_refuses_unenumerable_groups() {
    let out = run(&["oracle", "--n", "7"]);
    assert_eq!(exit_code(&out), 2);
}
