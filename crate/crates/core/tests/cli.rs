//! Subcommand behaviour through `run_command` and the `meanlab` binary.

use std::process::Command;

use meanlab::cli::{run_command, RunReport, EXIT_INPUT, EXIT_OK, EXIT_VIOLATED};
use serde_json::Value;

const X: &str = r#"{"dim":2,"rows":[[2,0.5],[0.5,1]]}"#;

fn run(args: &[&str]) -> (i32, Option<Value>) {
    let out = run_command(std::iter::once("meanlab").chain(args.iter().copied()));
    (out.code, out.report.map(|r| serde_json::from_str(&r.to_json()).unwrap()))
}

fn scaled(c: f64) -> String {
    format!(r#"{{"dim":2,"rows":[[{},{}],[{},{}]]}}"#, 2.0 * c, 0.5 * c, 0.5 * c, c)
}

#[test]
fn unknown_flags_and_missing_exponent_are_input_errors() {
    assert_eq!(run(&["mean", "--kind", "geom", "-A", X, "-B", X, "--bogus"]), (EXIT_INPUT, None));
    assert_eq!(run(&["mean", "--kind", "ka", "-A", X, "-B", X]), (EXIT_INPUT, None));
    assert_eq!(run(&["chain", "--q", "1", "-X", X, "-Y", X]), (EXIT_INPUT, None));
    assert_eq!(run(&["falsify", "--function", "cosh"]), (EXIT_INPUT, None));
    assert_eq!(run(&["verify", "--suite", "means", "--dim", "0"]), (EXIT_INPUT, None));
}

#[test]
fn help_exits_zero_without_report() {
    let out = run_command(["meanlab", "--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.report.is_none());
    assert!(out.message.unwrap().contains("falsify"));
}

#[test]
fn geometric_mean_of_a_matrix_with_itself() {
    let (code, report) = run(&["mean", "--kind", "geom", "-A", X, "-B", X]);
    assert_eq!(code, EXIT_OK);
    let report = report.unwrap();
    assert_eq!(report["command"], "mean");
    let rows = &report["outputs"]["result"]["rows"];
    assert!((rows[0][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((rows[0][1].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn digest_ignores_matrix_formatting() {
    let spaced = r#"{ "rows": [[2.0, 0.5], [0.5, 1.0]], "dim": 2 }"#;
    let (_, a) = run(&["mean", "--kind", "arith", "-A", X, "-B", X]);
    let (_, b) = run(&["mean", "--kind", "arith", "-A", spaced, "-B", X]);
    assert_eq!(a.unwrap()["inputs-digest"], b.unwrap()["inputs-digest"]);
}

#[test]
fn matrices_load_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, X).unwrap();
    let (code, _) = run(&["mean", "--kind", "min", "-A", path.to_str().unwrap(), "-B", X]);
    assert_eq!(code, EXIT_OK);
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["mean", "--kind", "min", "-A", missing.to_str().unwrap(), "-B", X]), (EXIT_INPUT, None));
}

#[test]
fn sqrt_arith_outside_its_band_reports_the_rejection() {
    // the local solver needs Y < 2X
    let (code, report) = run(&["inverse", "--problem", "sqrt-arith", "-X", X, "-Y", &scaled(3.0)]);
    assert_eq!(code, EXIT_VIOLATED);
    let report = report.unwrap();
    assert_eq!(report["outputs"]["error"]["kind"], "hypothesis-violated");
}

#[test]
fn sqrt_arith_chain_covers_a_wide_gap() {
    let (code, report) = run(&["chain", "--problem", "sqrt-arith", "-X", X, "-Y", &scaled(20.0)]);
    assert_eq!(code, EXIT_OK);
    let out = &report.unwrap()["outputs"];
    assert_eq!(out["all_links_solved"], true);
    assert!(out["length"].as_u64().unwrap() >= 3);
    assert!(out["max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn arith_power_chain_above_and_below_one() {
    for q in ["2", "0.5"] {
        let (code, report) = run(&["chain", "--q", q, "-X", X, "-Y", &scaled(5.0)]);
        assert_eq!(code, EXIT_OK, "q={q}");
        assert_eq!(report.unwrap()["outputs"]["all_links_solved"], true);
    }
}

#[test]
fn means_suite_holds_and_square_is_falsified() {
    let (code, report) = run(&["verify", "--suite", "means", "--samples", "60"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.unwrap()["outputs"]["verdict"]["status"], "holds-on-samples");

    let (code, report) = run(&["falsify", "--function", "power:2", "--samples", "50"]);
    assert_eq!(code, EXIT_VIOLATED);
    let w = &report.unwrap()["outputs"]["verdict"]["witness"];
    assert!(w["min_eigenvalue"].as_f64().unwrap() < 0.0);
}

#[test]
fn characterization_and_naive_counterexample_suites() {
    let (code, report) = run(&["verify", "--suite", "characterization", "--function", "power:2", "--samples", "80"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.unwrap()["outputs"]["consistent"], true);

    let (code, report) = run(&["verify", "--suite", "prop31", "--q", "2", "--samples", "80"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.unwrap()["outputs"]["demonstrated"], true);
}

#[test]
fn explore_on_commuting_input() {
    let (code, report) = run(&[
        "explore",
        "--p",
        "0.5",
        "--q",
        "2",
        "-X",
        r#"{"dim":2,"rows":[[1,0],[0,2]]}"#,
        "-Y",
        r#"{"dim":2,"rows":[[1.2,0],[0,2.1]]}"#,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.unwrap()["outputs"]["status"], "solved");
    // X not below Y is an input error
    assert_eq!(run(&["explore", "--p", "0.5", "--q", "2", "-X", &scaled(2.0), "-Y", X]), (EXIT_INPUT, None));
}

#[test]
fn binary_prints_report_and_honours_thread_variable() {
    let bin = env!("CARGO_BIN_EXE_meanlab");
    let out = Command::new(bin)
        .args(["falsify", "--function", "power:2", "--samples", "40"])
        .env("MEANLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_VIOLATED));
    let report: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.command, "falsify");

    let bad =
        Command::new(bin).args(["falsify", "--function", "sqrt"]).env("MEANLAB_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    assert!(bad.stdout.is_empty());
}
