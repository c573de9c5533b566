//! End-to-end runs of the `cotriple` binary: report formats, exit
//! codes, and determinism of the emitted text.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn cotriple(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotriple"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write input");
    path.to_str().expect("utf-8 path").to_string()
}

const EXTERIOR: &str = "field 2\nalgebra commutative\ngenerator x 1\n";
const TRUNCATED: &str = "\
# squares truncate onto y
field 2
algebra commutative
generator x 2
generator y 4
product x x = y
";

#[test]
fn homology_reports_each_degree_and_exits_clean() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "a.alg", EXTERIOR);
    let out = cotriple(&["homology", "--input", &input, "--operad", "e", "--max-degree", "4"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "H_0 model=0 target=0 OK\nH_1 model=1 target=1 OK\nH_2 model=0 target=0 OK\nH_3 model=0 target=0 OK\n"
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "a.alg", TRUNCATED);
    let args = ["homology", "--input", &input[..], "--operad", "e", "--max-degree", "5"];
    let first = cotriple(&args);
    let second = cotriple(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn resolve_dumps_generators_with_differentials() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "a.alg", EXTERIOR);
    let out = cotriple(&["resolve", "--input", &input, "--operad", "e", "--max-degree", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "g0 level=0 degree=1 tree=x\n\
         d g0 = 0\n\
         g1 level=1 degree=3 tree=((12); x, x)\n\
         d g1 = ((12); g0, g0)\n"
    );
}

#[test]
fn the_output_flag_redirects_the_report() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "a.alg", EXTERIOR);
    let report = dir.path().join("report.txt");
    let out = cotriple(&[
        "homology", "--input", &input, "--operad", "e", "--max-degree", "3",
        "--output", report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("H_0 model=0 target=0 OK\n"));
}

#[test]
fn small_check_suites_pass() {
    for args in [
        &["check", "operad", "--max-arity", "3", "--max-degree", "1"][..],
        &["check", "coaction", "--max-dim", "1", "--max-arity", "2", "--max-degree", "1"][..],
        &["check", "framing", "--max-dim", "1", "--max-degree", "2"][..],
    ] {
        let out = cotriple(args);
        assert!(out.status.success(), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.ends_with("PASS\n"), "{args:?}: {text}");
    }
}

#[test]
fn the_coend_oracle_reports_dimensions_and_round_trips() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "a.alg", EXTERIOR);
    let out = cotriple(&["oracle", "coend", "--input", &input, "--max-dim", "1", "--max-degree", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 1: model=1 skeleton=1"), "{text}");
    assert!(text.contains("round trips:"), "{text}");
    assert!(text.ends_with("PASS\n"), "{text}");
}

#[test]
fn the_field_override_recomputes_over_the_requested_field() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "a.alg", EXTERIOR);
    let out = cotriple(&[
        "homology", "--input", &input, "--operad", "e", "--max-degree", "4", "--field", "0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("H_1 model=1 target=1 OK"), "{text}");
}

#[test]
fn parse_errors_carry_the_line_number_and_exit_two() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "bad.alg", "field 2\nalgebra commutative\nwobble x 1\n");
    let out = cotriple(&["homology", "--input", &input, "--operad", "e", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error at line 3"), "{err}");
}

#[test]
fn degree_zero_generators_are_rejected_with_exit_two() {
    let dir = tempdir().unwrap();
    let input = write(dir.path(), "zero.alg", "field 2\nalgebra commutative\ngenerator x 0\n");
    let out = cotriple(&["resolve", "--input", &input, "--operad", "e", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degrees >= 1"), "{err}");
}

#[test]
fn invalid_invocations_exit_two() {
    let dir = tempdir().unwrap();
    let truncated = write(dir.path(), "a.alg", TRUNCATED);
    // Missing file.
    let out = cotriple(&["homology", "--input", "/nonexistent.alg", "--operad", "e", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // Symmetric collapse needs characteristic zero.
    let out = cotriple(&["homology", "--input", &truncated, "--operad", "com", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("characteristic zero"));
    // Window below one.
    let out = cotriple(&["resolve", "--input", &truncated, "--operad", "e", "--max-degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown operad flavour is a usage error.
    let out = cotriple(&["homology", "--input", &truncated, "--operad", "sym", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
