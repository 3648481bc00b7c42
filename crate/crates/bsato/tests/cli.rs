//! End-to-end tests of the binary: exit codes, output formats, and the
//! JSON round-trip guarantee for every emitted report.

use std::process::{Command, Output};

use bsato::report::{
    AnalysisReport, BsCheckReport, IdealCheckReport, LatticeReport, NormalizeReport, ScreenJson,
    SelftestReport,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bsato"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn analyze_text_verdict() {
    let out = run(&["analyze-arrangement", &fixture("braid3.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("indecomposable: yes"), "{text}");
    assert!(text.contains("-2/3 is a b-function root"), "{text}");
}

#[test]
fn analyze_json_roundtrip() {
    let out = run(&[
        "analyze-arrangement",
        &fixture("near_pencil4.json"),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: AnalysisReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert_eq!(report.schema, 1);
    assert!(report.indecomposable);
    assert!(report.condition_r.pass);
    assert_eq!(
        report.verdict.root.as_ref().unwrap().0,
        bsato::rat::ratio(-3, 4)
    );
}

#[test]
fn analyze_decomposable_is_a_finding_not_an_error() {
    let out = run(&[
        "analyze-arrangement",
        &fixture("boolean2.json"),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: AnalysisReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert!(!report.indecomposable);
    assert!(report.epsilon.is_none());
    assert!(!report.verdict.applies);
}

#[test]
fn malformed_file_exits_2() {
    let out = run(&["analyze-arrangement", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn operator_parse_error_exits_2() {
    let out = run(&["weyl-normalize", "x1*"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_rejected() {
    let out = run(&[
        "analyze-arrangement",
        &fixture("braid3.json"),
        "--frobnicate",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_violations_exit_3() {
    // s where an s-free operator is required
    let out = run(&["ideal-check", "s*x1"]);
    assert_eq!(out.status.code(), Some(3));
    // inhomogeneous input to the Euler witness
    let out = run(&["euler-witness", "--f", "x1^2 + x2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn weyl_normalize_roundtrip() {
    let out = run(&["weyl-normalize", "d1*x1", "--format", "json"]);
    assert!(out.status.success());
    let report: NormalizeReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert_eq!(report.normal_form, "x1*d1 + 1");
}

#[test]
fn ideal_check_roundtrip() {
    let out = run(&["ideal-check", "x1*d1 + x2*d2", "--format", "json"]);
    assert!(out.status.success());
    let report: IdealCheckReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert!(!report.in_ideal);
    assert_eq!(report.sigma.0, bsato::rat::rat(-2));
}

#[test]
fn bs_check_pass_and_fail() {
    let out = run(&[
        "bs-check", "--f", "x1", "--P", "d1", "--b", "s+1", "--format", "json",
    ]);
    assert!(out.status.success());
    let report: BsCheckReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert!(report.holds);

    let out = run(&[
        "bs-check", "--f", "x1", "--P", "d1", "--b", "s+2", "--format", "json",
    ]);
    assert!(out.status.success());
    let report: BsCheckReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert!(!report.holds);
    assert_ne!(report.residual, "0");
}

#[test]
fn annihilator_check_text() {
    let out = run(&["annihilator-check", "--f", "x1*x2", "--P", "x1*d1 - s"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("annihilates f^s: yes"));
}

#[test]
fn fs_apply_text() {
    let out = run(&["fs-apply", "--f", "x1*x2", "--P", "d1*d2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("s^2"));
}

#[test]
fn euler_witness_text() {
    let out = run(&["euler-witness", "--f", "x1^2*x2 + x2^3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("-2/3"));
}

#[test]
fn homog_screen_file_and_inline_agree() {
    let from_file = run(&[
        "homog-screen",
        &fixture("worked_example.json"),
        "--format",
        "json",
    ]);
    assert!(from_file.status.success());
    let inline = run(&[
        "homog-screen",
        "--f",
        "x1*x2*x3 + x1^2*x4 + x2^2*x4",
        "--format",
        "json",
    ]);
    assert!(inline.status.success());
    let a: ScreenJson = serde_json::from_str(&stdout(&from_file)).expect("reparses");
    let b: ScreenJson = serde_json::from_str(&stdout(&inline)).expect("reparses");
    assert_eq!(a, b);
    assert_eq!(a.splits.len(), 1);
    assert_eq!(a.splits[0].s_vars, vec![1, 2]);
    assert_eq!(a.splits[0].k, 2);
}

#[test]
fn lattice_roundtrip_with_order_and_lambda() {
    let out = run(&[
        "lattice",
        &fixture("braid3.json"),
        "--order",
        "3,1,2",
        "--lambda",
        "-2/3,-2/3,4/3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: LatticeReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert_eq!(report.nbc_counts, vec![1, 3, 2]);
    let aomoto = report.aomoto.expect("lambda given");
    assert_eq!(aomoto.betti, vec![0, 1, 1]);
}

#[test]
fn lattice_bad_order_exits_3() {
    let out = run(&["lattice", &fixture("braid3.json"), "--order", "1,1,2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn selftest_passes_and_roundtrips() {
    let out = run(&["selftest", "--format", "json"]);
    assert!(out.status.success());
    let report: SelftestReport = serde_json::from_str(&stdout(&out)).expect("reparses");
    assert!(report.ok);
    assert_eq!(report.suites.len(), 5);
}
