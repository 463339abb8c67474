//! End-to-end tests driving the compiled binary, covering the documented
//! output formats and exit codes.

use std::process::{Command, Output};

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn diagrams_listing() {
    let out = brauer(&["diagrams", "--r", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(lines, vec!["0-1,2-3", "0-2,1-3", "0-3,1-2"]);

    let out = brauer(&["diagrams", "--r", "1"]);
    assert_eq!(stdout(&out).trim(), "0-1");

    let out = brauer(&["diagrams", "--r", "3", "--output", "json"]);
    let parsed: Vec<String> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.len(), 15);
}

#[test]
fn diagrams_respects_the_cap_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(["diagrams", "--r", "5"])
        .env("BRAUER_MAX_DIAGRAMS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("cap of 100"), "stderr was: {err}");
}

#[test]
fn mul_examples() {
    let out = brauer(&[
        "mul", "--r", "2", "--d1", "0-1,2-3", "--d2", "0-1,2-3", "--form", "symmetric", "--n",
        "3", "--char", "0",
    ]);
    assert_eq!(stdout(&out).trim(), "3 * 0-1,2-3");

    let out = brauer(&[
        "mul", "--r", "2", "--d1", "0-1,2-3", "--d2", "0-1,2-3", "--form", "symmetric", "--n",
        "3", "--char", "3",
    ]);
    assert_eq!(stdout(&out).trim(), "0 * 0-1,2-3");

    let out = brauer(&[
        "mul", "--r", "2", "--d1", "0-2,1-3", "--d2", "0-3,1-2", "--form", "symmetric", "--n",
        "3", "--char", "0",
    ]);
    assert_eq!(stdout(&out).trim(), "1 * 0-3,1-2");
}

#[test]
fn mul_rejects_odd_skew() {
    let out = brauer(&[
        "mul", "--r", "2", "--d1", "0-1,2-3", "--d2", "0-1,2-3", "--form", "skew", "--n", "3",
        "--char", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn act_example() {
    let out = brauer(&[
        "act", "--n", "2", "--r", "2", "--form", "symmetric", "--char", "0", "--vector",
        "1,2:1", "--element", "0-1,2-3:1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1,2:1;2,1:1");
}

#[test]
fn decompose_table_and_exit_codes() {
    let out = brauer(&[
        "decompose", "--n", "2", "--r", "2", "--form", "symmetric", "--char", "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("total_dim = 4"));
    assert_eq!(text.lines().filter(|l| l.ends_with("true")).count(), 3);

    let out = brauer(&[
        "decompose", "--n", "3", "--r", "2", "--form", "symmetric", "--char", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("characteristic 2"));

    let out = brauer(&[
        "decompose", "--n", "2", "--r", "3", "--form", "skew", "--char", "2",
    ]);
    assert!(out.status.success());
}

#[test]
fn decompose_json_round_trips() {
    let out = brauer(&[
        "decompose", "--n", "3", "--r", "2", "--form", "symmetric", "--char", "3", "--output",
        "json",
    ]);
    assert!(out.status.success());
    let report: brauer::DecompositionReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.n, 3);
    assert_eq!(report.characteristic, 3);
    assert_eq!(report.total_dim, 9);
    assert!(report.all_verified());
}

#[test]
fn decompose_exhaustive_mode() {
    let out = brauer(&[
        "decompose", "--n", "2", "--r", "2", "--form", "skew", "--char", "0", "--exhaustive",
    ]);
    assert!(out.status.success());
}

#[test]
fn weights_and_fibers() {
    let out = brauer(&["weights", "--n", "2", "--r", "2", "--output", "json"]);
    let items: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(items.len(), 3);
    assert_eq!(items[1]["xi"], serde_json::json!([0]));
    assert_eq!(items[1]["dim"], "2");

    let out = brauer(&["fibers", "--n", "4", "--r", "2", "--xi", "0,0"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, vec!["0,1,1,0", "1,0,0,1"]);

    let out = brauer(&["fibers", "--n", "4", "--r", "2", "--xi", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_cell_passes() {
    let out = brauer(&["verify", "--n", "2", "--r", "2", "--output", "json"]);
    assert!(out.status.success());
    let cells: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cells.len(), 10);
    assert!(cells
        .iter()
        .all(|c| c["status"] == "pass" || c["status"] == "excluded"));
}

#[test]
fn verify_reports_symmetric_char_two_as_excluded() {
    let out = brauer(&[
        "verify", "--n", "3", "--r", "2", "--forms", "symmetric", "--chars", "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("excluded"));
}
