use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use straightedge::constructions::example_points;
use straightedge::oracle::generate_instance;
use straightedge::trace::from_json;
use straightedge_cli::{parse_points, parse_points_str, points_document, InputError};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_straightedge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

const TOKENS: [&str; 3] = ["ON_CUBIC", "NOT_ON_CUBIC", "DEGENERATE"];

#[test]
fn example_is_on_cubic() {
    let o = run(&["verify", path_str(&data("example.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "ON_CUBIC");
    assert!(stdout(&o).contains("[P2 U V] = 0"));
}

#[test]
fn perturbed_is_not_on_cubic() {
    let o = run(&["verify", path_str(&data("perturbed.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(first_line(&o), "NOT_ON_CUBIC");
}

#[test]
fn exhausted_retries_are_degenerate() {
    let o = run(&["verify", path_str(&data("collinear_four.json")), "--max-retries", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(first_line(&o), "DEGENERATE");
    assert!(stdout(&o).contains("reason:"));
}

#[test]
fn oracle_reports_zero_determinant() {
    let o = run(&["oracle", path_str(&data("example.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "ON_CUBIC");
    assert_eq!(lines[1], "0");
    assert!(lines[2].starts_with("cubic: "));

    let o = run(&["oracle", path_str(&data("perturbed.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(first_line(&o), "NOT_ON_CUBIC");
    assert_ne!(stdout(&o).lines().nth(1), Some("0"));
}

#[test]
fn bad_inputs_exit_3() {
    for (file, needle) in [
        ("nine.json", "expected 10 points, got 9"),
        ("eleven.json", "expected 10 points, got 11"),
        ("zero_denominator.json", "points[4][1]"),
    ] {
        for cmd in ["verify", "oracle", "certificate"] {
            let o = run(&[cmd, path_str(&data(file))]);
            assert_eq!(o.status.code(), Some(3), "{cmd} {file}");
            let err = String::from_utf8_lossy(&o.stderr);
            assert!(err.contains(needle), "{cmd} {file}: {err}");
        }
    }
    let o = run(&["verify", "/nonexistent/points.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_3_and_help_exits_0() {
    assert_eq!(run(&["bogus"]).status.code(), Some(3));
    assert_eq!(run(&["verify"]).status.code(), Some(3));
    let o = run(&["verify", path_str(&data("example.json")), "--partition", "s1=1,2,3"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn example_file_parses_to_the_example() {
    assert_eq!(parse_points(&data("example.json")).unwrap(), example_points());
}

#[test]
fn parse_errors_name_the_problem() {
    let pts = example_points();
    let doc = points_document(&pts);
    assert_eq!(parse_points_str(&doc, "doc").unwrap(), pts);

    let short = r#"{"points": [["1","2","1"]]}"#;
    assert!(matches!(parse_points_str(short, "x"), Err(InputError::Count { got: 1, .. })));

    let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    v["points"][3][2] = serde_json::json!(0.5);
    match parse_points_str(&v.to_string(), "x") {
        Err(InputError::Field { field, .. }) => assert_eq!(field, "points[3][2]"),
        other => panic!("{other:?}"),
    }

    // [2 : 4 : 2] is the same point as [1 : 2 : 1].
    let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    v["points"][0] = serde_json::json!(["2", "4", "2"]);
    v["points"][7] = serde_json::json!([1, 2, 1]);
    assert!(matches!(
        parse_points_str(&v.to_string(), "x"),
        Err(InputError::Duplicate { first: 0, second: 7, .. })
    ));

    assert!(matches!(parse_points_str("{\"points\": [", "x"), Err(InputError::Syntax { .. })));
}

#[test]
fn trace_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let o = run(&["verify", path_str(&data("example.json")), "--trace", path_str(&trace)]);
    assert_eq!(o.status.code(), Some(0));
    let t = from_json(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t.verdict().token(), "ON_CUBIC");

    let o = run(&["verify", path_str(&data("example.json")), "--trace"]);
    let out = stdout(&o);
    let (token, json) = out.split_once('\n').unwrap();
    assert_eq!(token, "ON_CUBIC");
    assert_eq!(from_json(json).unwrap(), t);

    let o = run(&["certificate", "--from-trace", path_str(&trace)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("relations: 25/25 hold"));
}

#[test]
fn svg_is_deterministic_and_labeled() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let o = run(&["verify", path_str(&data("example.json")), "--svg", path_str(p)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches(r#"<circle class="input""#).count(), 10);
    assert_eq!(text.matches(r#"class="construction-label""#).count(), 11);
    assert!(text.matches(r#"class="conic""#).count() >= 4);
    assert!(text.contains("V (∞)"));
    assert!(text.trim_end().ends_with("</svg>"));
}

#[test]
fn svg_is_skipped_without_a_construction() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("none.svg");
    let o = run(&[
        "verify",
        path_str(&data("collinear_four.json")),
        "--max-retries",
        "1",
        "--svg",
        path_str(&svg),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!svg.exists());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no construction to draw"));
}

#[test]
fn certificate_holds_on_the_example() {
    let o = run(&["certificate", path_str(&data("example.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ON_CUBIC\n"));
    assert!(out.contains("relations: 25/25 hold"));
    assert!(out.contains(": reached"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn certificate_fails_off_the_cubic() {
    let o = run(&["certificate", path_str(&data("perturbed.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("NOT_ON_CUBIC\n"));
    assert!(out.lines().any(|l| l.starts_with("FAIL ")));
}

#[test]
fn empty_relation_file_reduces_to_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let rel = dir.path().join("empty.txt");
    std::fs::write(&rel, "").unwrap();
    let o = run(&["certificate", path_str(&data("example.json")), "--relations", path_str(&rel)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("reduction: 1 = 1"), "{out}");
    assert!(out.contains("relations: 0/0 hold"));
}

#[test]
fn verify_and_oracle_agree_on_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..6u64 {
        let on = seed % 2 == 0;
        let pts = generate_instance(on, 9000 + seed).unwrap();
        let file = dir.path().join(format!("g{seed}.json"));
        std::fs::write(&file, points_document(&pts)).unwrap();
        let v = run(&["verify", path_str(&file)]);
        let o = run(&["oracle", path_str(&file)]);
        let expected = if on { "ON_CUBIC" } else { "NOT_ON_CUBIC" };
        assert_eq!(first_line(&o), expected);
        let got = first_line(&v);
        assert!(TOKENS.contains(&got.as_str()));
        if got != "DEGENERATE" {
            assert_eq!(got, expected, "seed {seed}");
            assert_eq!(v.status.code(), o.status.code());
        }
    }
}
