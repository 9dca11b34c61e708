use std::process::Command;

use finsupp_cli::run;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_finsupp"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn call(args: &[&str]) -> finsupp_cli::Outcome {
    run(std::iter::once("finsupp").chain(args.iter().copied()))
}

#[test]
fn supp_of_unordered_pair() {
    let (code, stdout, _) = bin(&["supp", "zoo:upair", "--size", "3", "--element", "p(0,2)"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().next(), Some("{0,2}"));
}

#[test]
fn supp_accepts_non_canonical_terms() {
    let out = call(&["supp", "zoo:upair", "--size", "3", "--element", "p(2,0)"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("{0,2}\n"));
}

#[test]
fn modify_identity_max_is_empty() {
    let (code, stdout, _) = bin(&["modify", "zoo:identity", "--mode", "max"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().next(), Some("F°∅ = {}"));
    assert!(stdout.contains("∅→1: (empty)"));
}

#[test]
fn modify_twins_both_ways() {
    let max = call(&["modify", "zoo:twins", "--mode", "max"]);
    assert!(max.stdout.starts_with("F°∅ = {c}\n"));
    assert!(max.stdout.contains("∅→2: c ↦ c"));
    let min = call(&["modify", "zoo:twins", "--modify", "min"]);
    assert!(min.stdout.starts_with("F∘∅ = {}\n"));
}

#[test]
fn degree_of_power3() {
    let (code, stdout, _) = bin(&["degree", "zoo:power3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "3 (exact)\n");
    assert_eq!(
        call(&["degree", "zoo:power3", "--max-size", "2"]).stdout,
        "2 (lower bound)\n"
    );
}

#[test]
fn check_exit_codes() {
    assert_eq!(bin(&["check", "zoo:twins"]).0, 1);
    assert_eq!(bin(&["check", "zoo:twins", "--modify", "max"]).0, 0);
    assert_eq!(bin(&["check", "zoo:upair", "--max-size", "4"]).0, 0);
}

#[test]
fn skip_removes_failing_checks() {
    let out = call(&["check", "zoo:twins", "--skip", "mono,support"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(!out.stdout.contains("mono"));
    assert_eq!(call(&["check", "zoo:twins", "--skip", "nope"]).code, 2);
}

#[test]
fn json_report_schema_and_stability() {
    let args = ["check", "zoo:twins", "--json"];
    let first = call(&args);
    assert_eq!(first.code, 1);
    assert_eq!(first.stdout, call(&args).stdout);
    let value: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(value["tool_version"], finsupp_cli::TOOL_VERSION);
    assert_eq!(value["functor"], "twins");
    assert_eq!(value["max_size"], 3);
    let checks = value["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, finsupp_cli::CHECK_NAMES);
    assert_eq!(checks[1]["verdict"], "fail");
    assert!(!checks[1]["counterexamples"].as_array().unwrap().is_empty());
    assert!(checks.iter().all(|c| c.get("elapsed_ms").is_none()));

    let timed = call(&["check", "zoo:upair", "--json", "--timings"]);
    let value: serde_json::Value = serde_json::from_str(&timed.stdout).unwrap();
    assert!(value["checks"][0]["elapsed_ms"].is_number());
}

#[test]
fn max_size_bounds() {
    assert_eq!(call(&["check", "zoo:upair", "--max-size", "6"]).code, 2);
    assert_eq!(
        call(&["check", "zoo:upair", "--max-size", "1", "--modify", "max"]).code,
        2
    );
    assert_eq!(
        call(&["modify", "zoo:upair", "--mode", "min", "--max-size", "1"]).code,
        2
    );
    let out = call(&["degree", "zoo:identity", "--max-size", "5"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("warning"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(call(&["eval", "zoo:nope", "--size", "1"]).code, 2);
    assert_eq!(
        call(&["eval", "/nonexistent/file.ffn", "--size", "1"]).code,
        2
    );
    assert_eq!(
        call(&["supp", "zoo:upair", "--size", "2", "--element", "q(0)"]).code,
        2
    );
    assert_eq!(
        call(&[
            "map",
            "zoo:upair",
            "--fn",
            "0,5",
            "--dom",
            "2",
            "--cod",
            "2"
        ])
        .code,
        2
    );
    assert_eq!(call(&["frobnicate"]).code, 2);
    assert_eq!(call(&["--help"]).code, 0);
}

#[test]
fn eval_and_map() {
    let out = call(&["eval", "zoo:upair", "--size", "2"]);
    assert_eq!(out.stdout, "F(2) = {p(0,0), p(0,1), p(1,1)}\n");
    let out = call(&[
        "map",
        "zoo:upair",
        "--fn",
        "1,0",
        "--dom",
        "2",
        "--cod",
        "2",
    ]);
    assert!(out.stdout.contains("p(0,0) ↦ p(1,1)"));
    let out = call(&[
        "map",
        "zoo:const2",
        "--fn",
        "",
        "--dom",
        "0",
        "--cod",
        "1",
        "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(value["table"], serde_json::json!([0, 1]));
}

#[test]
fn presentation_files_are_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("swap.ffn");
    std::fs::write(&path, "functor swap\nshape p/2\neq p(a,b) = p(b,a)\n").unwrap();
    let out = call(&["eval", path.to_str().unwrap(), "--size", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "F(2) = {p(0,0), p(0,1), p(1,1)}\n");

    std::fs::write(&path, "shape p/2\neq p(a) = p(a,a)\n").unwrap();
    let out = call(&["eval", path.to_str().unwrap(), "--size", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("at 2:4"), "{}", out.stderr);
}

#[test]
fn export_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("upair.json");
    let path = path.to_str().unwrap();
    assert_eq!(call(&["export", "zoo:upair", "-o", path]).code, 0);
    let stdout = call(&["export", "zoo:upair"]).stdout;
    assert_eq!(std::fs::read_to_string(path).unwrap(), stdout);

    assert_eq!(call(&["check", path]).code, 0);
    let out = call(&["supp", path, "--size", "3", "--element", "p(0,2)"]);
    assert!(out.stdout.starts_with("{0,2}\n"));
    assert_eq!(call(&["eval", path, "--size", "4"]).code, 2);
    assert_eq!(call(&["check", path, "--max-size", "4"]).code, 2);
}

#[test]
fn tabulated_twins_support_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("twins.json");
    let path = path.to_str().unwrap();
    assert_eq!(call(&["export", "zoo:twins", "-o", path]).code, 0);
    let out = call(&["supp", path, "--size", "0", "--element", "c"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("[FAIL] mono"));
    assert!(out.stdout.contains("identifies `c` and `d`"));
    assert_eq!(call(&["degree", path]).code, 1);
}
