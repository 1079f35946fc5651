//! End-to-end behavior of the `cutswap` binary and its in-process entry point.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use tempfile::TempDir;

const F5: &str = "b c d\nc d e f g h\nd e\ne f g h\nb h\n";

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cutswap").chain(args.iter().copied());
    let code = cutswap_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cutswap"))
}

#[test]
fn check_f5_is_not_c1p() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.rows", F5);
    let (code, out, _) = run(&["check", f5.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out, "not C1P (class 1 fails at row 4)\n");
}

#[test]
fn check_empty_is_c1p() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.rows", "# nothing here\n\n");
    let (code, out, _) = run(&["check", empty.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "C1P\n");
}

#[test]
fn check_reports_unused_columns_only_when_present() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "c1p.rows", "a b\nb c\n");
    let (code, out, _) = run(&["check", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "C1P\n"));
}

#[test]
fn generated_c1p_family_checks_through_stdin() {
    let gen = binary()
        .args(["gen", "--c1p", "--cols", "1000", "--rows", "2000", "--seed", "1"])
        .output()
        .unwrap();
    assert!(gen.status.success());
    let mut check = binary().args(["check", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    check.stdin.take().unwrap().write_all(&gen.stdout).unwrap();
    let done = check.wait_with_output().unwrap();
    assert_eq!(done.status.code(), Some(0));
    assert_eq!(String::from_utf8(done.stdout).unwrap(), "C1P\n");
}

#[test]
fn json_report_is_deterministic_and_well_formed() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.rows", F5);
    let path = f5.to_str().unwrap();
    let (code, first, _) = run(&["check", "--json", path]);
    assert_eq!(code, 1);
    for _ in 0..5 {
        assert_eq!(run(&["check", "--json", path]).1, first);
    }
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["c1p"], false);
    assert_eq!(v["classes"][0]["swap_order"], serde_json::json!([0, 1, 4, 3, 2]));
    assert_eq!(v["classes"][0]["fail"]["row"], 4);
    assert_eq!(v["stats"]["interval_total_length"], 13);
    assert!(v["stats"].get("elapsed_ms").is_none());

    let (_, timed, _) = run(&["check", "--json", "--timing", path]);
    let v: serde_json::Value = serde_json::from_str(&timed).unwrap();
    assert!(v["stats"]["elapsed_ms"].is_number());
}

#[test]
fn json_report_round_trips_through_the_core_type() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "ok.rows", "a b c\nb c d\nd e\n");
    let (code, out, _) = run(&["check", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: cutswap::FamilyReport = serde_json::from_str(&out).unwrap();
    assert!(report.c1p);
    assert_eq!(serde_json::to_string(&report).unwrap(), out.trim_end());
}

#[test]
fn classes_order_and_max_on_f5() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.rows", F5);
    let path = f5.to_str().unwrap();
    assert_eq!(run(&["classes", path]), (0, "1: 0 1 2 3 4\n".into(), String::new()));
    assert_eq!(run(&["order", path]), (0, "1: 0 1 4 3 2\n".into(), String::new()));
    assert_eq!(run(&["max", path]).1, "0 -> 1\n1 -> none\n2 -> 3\n3 -> none\n4 -> 1\n");
}

#[test]
fn oracle_check_passes_on_f5() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.rows", F5);
    let (code, out, _) = run(&["oracle-check", f5.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn oracle_check_skips_brute_force_on_wide_families() {
    let dir = TempDir::new().unwrap();
    let (_, text, _) = run(&["gen", "--uniform", "--cols", "20", "--rows", "30", "--seed", "4", "--max-len", "6"]);
    let path = write(&dir, "wide.rows", &text);
    let (code, out, _) = run(&["oracle-check", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("SKIP verdict == brute_c1p"), "{out}");
}

#[test]
fn gen_modes() {
    let (code, star, _) = run(&["gen", "--star", "3"]);
    assert_eq!(code, 0);
    assert_eq!(star, "hub x0\nhub x1\nhub x2\n");

    let (code, a, _) = run(&["gen", "--uniform", "--cols", "8", "--rows", "5", "--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(a.lines().count(), 5);
    assert_eq!(run(&["gen", "--uniform", "--cols", "8", "--rows", "5", "--seed", "9"]).1, a);

    let (code, _, err) = run(&["gen", "--c1p", "--cols", "4", "--min-len", "5", "--max-len", "3"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn bench_prints_one_row_per_size() {
    let (code, out, _) = run(&["bench", "--min-exp", "10", "--max-exp", "10", "--repeats", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2, "{out}");

    let (code, out, _) = run(&["bench", "--min-exp", "6", "--max-exp", "8", "--repeats", "1", "--adversarial"]);
    assert_eq!(code, 0);
    let mass: Vec<u64> = out.lines().skip(1).map(|l| l.split_whitespace().nth(4).unwrap().parse().unwrap()).collect();
    assert!(mass[2] > 3 * mass[1] && mass[1] > 3 * mass[0], "{out}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.rows", F5);
    let (code, _, err) = run(&["check", "--bogus", f5.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"), "{err}");
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["check", "/definitely/not/here.rows"]).0, 2);

    let bad = write(&dir, "bad.rows", "a b\nc c\n");
    let (code, _, err) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    assert_eq!(run(&["bench", "--min-exp", "9", "--max-exp", "8"]).0, 2);
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check"));
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.rows", F5);
    assert_eq!(binary().args(["check", f5.to_str().unwrap()]).output().unwrap().status.code(), Some(1));
    assert_eq!(binary().arg("--nope").output().unwrap().status.code(), Some(2));
}
