//! End-to-end checks of the `period-index` binary: outputs and exit codes.

use std::process::{Command, Output};

use period_index::bounds::{index_bound, BoundReport};
use period_index::complexes::{homology_x, homology_xp};
use period_index::graded::GradedAbelianGroup;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_period-index"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

#[test]
fn bound_reports_the_general_bound() {
    let text = stdout(&["bound", "2", "3"]);
    assert!(text.lines().any(|l| l.starts_with("theorem_a bound:") && l.ends_with(" 8")), "{text}");
}

#[test]
fn bound_json_round_trips() {
    for (n, d) in [(2, 3), (12, 5), (5, 4), (360, 7)] {
        let text = stdout(&["bound", &n.to_string(), &d.to_string(), "--format", "json"]);
        let parsed: BoundReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, index_bound(n, d));
    }
}

#[test]
fn bound_compare_at_six_four() {
    let text = stdout(&["bound", "6", "4", "--compare", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["theorem_a"], "1296");
    assert_eq!(v["sharp"]["value"], "1296");
    assert_eq!(v["ratio"], "1");
    assert_eq!(v["sharp_strictly_better"], false);

    let text = stdout(&["bound", "4", "4", "--compare", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!((v["theorem_a"].as_str(), v["ratio"].as_str()), (Some("128"), Some("2")));
}

#[test]
fn table_csv() {
    let text = stdout(&["table", "--n-max", "4", "--d-max", "4", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,d,theorem_a"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.contains(&"4,4,128"));
    assert_eq!(rows.last(), Some(&"4,4,128"));
}

#[test]
fn homology_json_round_trips() {
    let text = stdout(&["homology", "--prime", "3", "--exponent", "2", "--max-degree", "12", "--format", "json"]);
    let g: GradedAbelianGroup = serde_json::from_str(&text).unwrap();
    assert_eq!(g, homology_xp(3, 2, 12).unwrap());

    let text = stdout(&["homology", "12", "--max-degree", "8", "--format", "json"]);
    let g: GradedAbelianGroup = serde_json::from_str(&text).unwrap();
    assert_eq!(g, homology_x(12, 8).unwrap());
}

#[test]
fn homology_table_lists_exponents() {
    let text = stdout(&["homology", "--prime", "2", "--exponent", "1", "--max-degree", "6"]);
    let row = |d: &str| text.lines().find(|l| l.split_whitespace().next() == Some(d)).unwrap().to_string();
    assert!(row("4").contains("Z/4"), "{text}");
    assert!(row("6").split_whitespace().last() == Some("6"), "{text}");
}

#[test]
fn homology_needs_exactly_one_source() {
    assert_eq!(code(&["homology"]), Some(2));
    assert_eq!(code(&["homology", "6", "--prime", "2", "--exponent", "1"]), Some(2));
    assert_eq!(code(&["homology", "--prime", "2"]), Some(2));
    assert_eq!(code(&["homology", "--prime", "6", "--exponent", "1"]), Some(2));
}

#[test]
fn words_listing() {
    let text = stdout(&["words", "2", "1", "--max-degree", "6", "--format", "csv"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "σσ,2,2,admissible",
            "σφ_2,3,2,admissible",
            "σψ_2,3,2,auxiliary",
            "σγ_2φ_2,5,2,admissible",
            "φ_2φ_2,6,2,admissible",
        ]
    );
    let ascii = stdout(&["words", "2", "1", "--max-degree", "6", "--format", "csv", "--ascii"]);
    assert!(ascii.lines().any(|l| l == "sg_2f_2,5,2,admissible"), "{ascii}");
}

#[test]
fn words_below_height_two_is_empty() {
    let text = stdout(&["words", "2", "1", "--max-degree", "1", "--format", "csv"]);
    assert_eq!(text.lines().count(), 1, "{text}");
}

#[test]
fn words_rejects_non_primes() {
    assert_eq!(code(&["words", "4", "1"]), Some(2));
    assert_eq!(code(&["words", "1", "1"]), Some(2));
}

#[test]
fn verify_exit_codes() {
    let snf = run(&["verify", "--suite", "snf", "--seed", "7"]);
    assert_eq!(snf.status.code(), Some(0));
    let text = String::from_utf8(snf.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS snf")).count(), 100);
    assert_eq!(code(&["verify", "--suite", "all"]), Some(0));
    assert_eq!(code(&["verify", "--suite", "elementary", "--sequential"]), Some(0));
    assert_eq!(code(&["verify", "--suite", "bogus"]), Some(2));
}

#[test]
fn malformed_arguments_exit_two() {
    for args in [
        &["bound", "0", "3"][..],
        &["bound", "3", "0"],
        &["bound", "x", "3"],
        &["bound", "-2", "3"],
        &["bound", "2"],
        &["table", "--n-max", "0"],
        &["bound", "2", "3", "--format", "xml"],
        &[],
    ] {
        assert_eq!(code(args), Some(2), "{args:?}");
    }
}
