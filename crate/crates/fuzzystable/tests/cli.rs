use std::io::Write;
use std::process::{Command, Output, Stdio};

use fuzzystable::core::stable::{StabilityVerdict, Status};
use fuzzystable::core::Interpretation;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fuzzystable"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn success_exits_zero() {
    let o = run(&["eval", "-e", "p &p q", "--interp", "p=0.8,q=0.7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.56");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["check", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "-e", "p", "--interp", "p=1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn syntax_errors_report_position() {
    let o = run(&["parse", "-e", "p &m\n  q &x r"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("at 2:5"), "{err}");
}

#[test]
fn missing_atoms_are_rejected() {
    let o = run(&["check", "-e", "p ->r q", "--interp", "p=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains('q'));
}

#[test]
fn fail_on_unstable_exits_one() {
    let args = ["check", "-e", "not_s q ->r p", "--interp", "p=1,q=0.3"];
    assert_eq!(run(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--fail-on-unstable");
    assert_eq!(run(&strict).status.code(), Some(1));
    let stable = [
        "check",
        "-e",
        "not_s q ->r p",
        "--interp",
        "p=1,q=0",
        "--fail-on-unstable",
    ];
    assert_eq!(run(&stable).status.code(), Some(0));
}

#[test]
fn human_check_output() {
    let o = run(&["check", "-e", "not_s q ->r p", "--interp", "p=1,q=0.3"]);
    let text = stdout(&o);
    assert!(text.starts_with("unstable\n"), "{text}");
    assert!(text.contains("D-valued check: D=10"), "{text}");
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn json_verdict_round_trips() {
    let o = run(&[
        "--json",
        "check",
        "-e",
        "not_s q ->r p",
        "--interp",
        "p=1,q=0.3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: StabilityVerdict = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.status, Status::Unstable);
    assert_eq!(v.denominator, 10);
    assert!(v.complete);
    let w: Interpretation = "p=0.7,q=0".parse().unwrap();
    assert_eq!(v.witness, Some(w));
    let again = serde_json::to_value(&v).unwrap();
    let original: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(again, original);
}

#[test]
fn formula_from_file_and_stdin() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# loop\n(not_s q ->r p) &m\n(not_s p ->r q)").unwrap();
    let path = file.path().to_str().unwrap();
    let o = run(&["--json", "enumerate", "-f", path, "--denominator", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 3);

    let mut child = bin()
        .args(["parse", "-f", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"p |l not_s p")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p |l not_s p\n"));
}

#[test]
fn sampled_strategy_is_labelled_incomplete() {
    let o = run(&[
        "--json",
        "check",
        "-e",
        "not_s q ->r p",
        "--interp",
        "p=1,q=0",
        "--strategy",
        "sampled:50",
        "--seed",
        "3",
    ]);
    let v: StabilityVerdict = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.status, Status::Stable);
    assert!(!v.complete);
    assert_eq!(v.examined, 50);
}

#[test]
fn enumerate_rejects_sampling() {
    let o = run(&["enumerate", "-e", "p", "--strategy", "sampled:10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn props_run_reports_and_exits() {
    let o = run(&["props", "run", "--suite", "tnorm-bounds", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tnorm-bounds"));
    let o = run(&[
        "props",
        "run",
        "--suite",
        "reduct-wrapper-lukasiewicz",
        "--trials",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("expected-fail"));
    let o = run(&["props", "run", "--suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn translate_and_equilibrium() {
    let o = run(&["translate", "nneg", "-e", "(0.2 ->r p) &m (0.3 ->r ~p)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains('~'));
    let o = run(&[
        "equilibrium",
        "check",
        "-e",
        "(0.2 ->r p) &m (0.3 ->r ~p)",
        "--valuation",
        "p=[0.2,0.7]",
    ]);
    assert!(stdout(&o).starts_with("equilibrium"), "{}", stdout(&o));
}
