//! End-to-end tests of the command-line surface, run in-process.

use std::fs;
use std::path::PathBuf;

use ukbw::cli::{run_cli, EXIT_INFEASIBLE, EXIT_LIMIT, EXIT_OK, EXIT_USAGE};
use ukbw::io::{parse_instance, parse_solution, serialize_instance, serialize_solution};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn fixture_str(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["ukbw"];
    argv.extend_from_slice(args);
    let code = run_cli(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ukbw-test-{}-{name}", std::process::id()))
}

#[test]
fn solve_matches_golden_output() {
    let (code, out, err) = run(&["solve", &fixture_str("instance_a.json")]);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    let golden = fs::read_to_string(fixture("instance_a_solution.json")).unwrap();
    assert_eq!(out, golden);
}

#[test]
fn solve_output_is_deterministic() {
    let (_, first, _) = run(&["solve", &fixture_str("instance_a.json")]);
    let (_, second, _) = run(&["solve", &fixture_str("instance_a.json")]);
    assert_eq!(first, second);
}

#[test]
fn oracle_agrees_with_solve() {
    let (solve_code, solve_out, _) = run(&["solve", &fixture_str("instance_a.json")]);
    let (oracle_code, oracle_out, _) = run(&["oracle", &fixture_str("instance_a.json")]);
    assert_eq!(solve_code, oracle_code);
    let solved = parse_solution(&solve_out).unwrap();
    let enumerated = parse_solution(&oracle_out).unwrap();
    assert_eq!(solved.status, enumerated.status);
    assert_eq!(solved.counts, enumerated.counts);
    assert_eq!(solved.objective, enumerated.objective);
}

#[test]
fn check_passes_golden_solution() {
    let (code, out, err) = run(&[
        "check",
        &fixture_str("instance_a.json"),
        &fixture_str("instance_a_solution.json"),
    ]);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    assert!(out.is_empty());
}

#[test]
fn check_fails_bad_solution() {
    let (code, _, err) = run(&[
        "check",
        &fixture_str("instance_a.json"),
        &fixture_str("bad_solution.json"),
    ]);
    assert_eq!(code, EXIT_INFEASIBLE);
    assert!(err.contains("total weight"), "stderr: {err}");
}

#[test]
fn solve_reports_infeasible_with_exit_one() {
    let (code, out, _) = run(&["solve", &fixture_str("instance_c.json")]);
    assert_eq!(code, EXIT_INFEASIBLE);
    assert!(out.contains("\"status\": \"infeasible\""));
    assert!(!out.contains("counts"));
}

#[test]
fn node_budget_exit_code() {
    let (code, out, _) = run(&["solve", &fixture_str("instance_a.json"), "--max-nodes", "1"]);
    assert_eq!(code, EXIT_LIMIT);
    assert!(out.contains("limit_exceeded"));
}

#[test]
fn oracle_cap_exit_code() {
    let (code, _, err) = run(&["oracle", &fixture_str("instance_a.json"), "--cap", "10"]);
    assert_eq!(code, EXIT_LIMIT);
    assert!(err.contains("exceeding cap"));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, _) = run(&["solve"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, err) = run(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("error:"));
}

#[test]
fn linear_objective_requires_coeffs() {
    let (code, _, err) = run(&[
        "solve",
        &fixture_str("instance_a.json"),
        "--objective",
        "linear",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--coeffs"));
}

#[test]
fn linear_objective_accepts_negative_coeffs() {
    let (code, out, err) = run(&[
        "solve",
        &fixture_str("instance_a.json"),
        "--objective",
        "linear",
        "--coeffs",
        "-1,2",
    ]);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    // Optimum is (7, 0); maximize -w0 + 2*w1 pins w0 at its minimum.
    assert!(out.contains("\"counts\": [7, 0]"));
    assert!(out.contains("\"weights\": [1.0000000000000000e0, 3.0000000000000000e0]"));
}

#[test]
fn span_subcommand_prints_interval() {
    let (code, out, _) = run(&["span", &fixture_str("instance_a.json"), "--counts", "0,3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "{\n  \"low\": 6.0000000000000000e0,\n  \"high\": 9.0000000000000000e0\n}\n"
    );
}

#[test]
fn degeneracy_subcommand_reports_certificate() {
    let (code, out, _) = run(&[
        "degeneracy",
        &fixture_str("instance_a.json"),
        &fixture_str("instance_a_solution.json"),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"degenerate\": false"));
}

#[test]
fn gen_is_deterministic_and_solvable() {
    let (code, first, _) = run(&["gen", "--n", "3", "--seed", "11", "--mode", "span_hit"]);
    assert_eq!(code, EXIT_OK);
    let (_, second, _) = run(&["gen", "--n", "3", "--seed", "11", "--mode", "span_hit"]);
    assert_eq!(first, second);

    let instance_path = temp_path("gen.json");
    fs::write(&instance_path, &first).unwrap();
    let solution_path = temp_path("gen-solution.json");
    let (code, _, err) = run(&[
        "solve",
        instance_path.to_str().unwrap(),
        "-o",
        solution_path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "stderr: {err}");

    let (code, _, err) = run(&[
        "check",
        instance_path.to_str().unwrap(),
        solution_path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "stderr: {err}");

    fs::remove_file(instance_path).ok();
    fs::remove_file(solution_path).ok();
}

#[test]
fn gen_rejects_bad_span_factor() {
    let (code, _, err) = run(&[
        "gen",
        "--n",
        "2",
        "--seed",
        "0",
        "--span-factor-range",
        "0.5,2",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("span_factor_range"));
}

#[test]
fn golden_files_round_trip_idempotently() {
    for name in ["instance_a.json", "instance_c.json"] {
        let text = fs::read_to_string(fixture(name)).unwrap();
        let once = serialize_instance(&parse_instance(&text).unwrap());
        assert_eq!(once, text, "{name} is not in canonical form");
        let twice = serialize_instance(&parse_instance(&once).unwrap());
        assert_eq!(twice, once);
    }
    for name in ["instance_a_solution.json", "bad_solution.json"] {
        let text = fs::read_to_string(fixture(name)).unwrap();
        let once = serialize_solution(&parse_solution(&text).unwrap());
        assert_eq!(once, text, "{name} is not in canonical form");
        let twice = serialize_solution(&parse_solution(&once).unwrap());
        assert_eq!(twice, once);
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("solve"));
}
