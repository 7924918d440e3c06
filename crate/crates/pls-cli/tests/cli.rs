//! Command-line contract tests: exit codes, the stdout/stderr split, and
//! deterministic (golden) outputs.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn pls(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pls"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    pls(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = pls(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

const GOLDWASSER: &str = "6\n1 2 3 4 5 6\n3 6 1 2 4 5\n5 4 2 6 3 1\n2 5 . . . .\n4 1 . . . .\n6 3 . . . .\n";

#[test]
fn demo_emits_the_square_byte_exactly() {
    let output = run(&["demo", "goldwasser"]);
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), GOLDWASSER);
}

#[test]
fn check_hall_exhaustive_on_demo_square() {
    let output = run_with_stdin(&["check-hall", "--exhaustive"], GOLDWASSER);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout_of(&output).is_empty(), "reports go to stderr");
    let report = stderr_of(&output);
    assert!(report.contains("satisfied"));
    assert!(report.contains("4096 sets checked"));
}

#[test]
fn check_hall_violated_prints_certificate_and_exits_1() {
    // (1,1) supports nothing.
    let square = "2\n. 1\n2 .\n";
    let output = run_with_stdin(&["check-hall"], square);
    assert_eq!(output.status.code(), Some(1));
    let report = stderr_of(&output);
    assert!(report.contains("violated"));
    assert!(report.contains("cells: (1,1)"));
}

#[test]
fn check_hall_limit_infeasible_exits_3() {
    let square = "6\n. . . . . .\n. . . . . .\n. . . . . .\n. . . . . .\n. . . . . .\n. . . . . .\n";
    let output = run_with_stdin(&["check-hall", "--limit", "10"], square);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr_of(&output).contains("infeasible"));
}

#[test]
fn hall_limit_env_var_is_honored() {
    let square = "4\n. . . .\n. . . .\n. . . .\n. . . .\n";
    let mut cmd = pls(&["check-hall"]);
    cmd.env("PLS_HALL_LIMIT", "3");
    cmd.stdin(Stdio::piped());
    cmd.stdout(Stdio::piped());
    cmd.stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(square.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(3), "16 empty cells > env limit 3");
}

#[test]
fn check_hall_sufficient_modes() {
    let satisfied = run_with_stdin(&["check-hall", "--sufficient"], GOLDWASSER);
    assert_eq!(satisfied.status.code(), Some(0));
    // An empty cell supporting one rare symbol leaves the check inconclusive.
    let square = "4\n1 2 3 4\n3 . . .\n. 4 1 3\n. 3 4 1\n";
    let inconclusive = run_with_stdin(&["check-hall", "--sufficient"], square);
    assert_eq!(inconclusive.status.code(), Some(2));
    assert!(stderr_of(&inconclusive).contains("inconclusive"));
}

#[test]
fn solve_reports_incompletable_with_exit_1() {
    let output = run_with_stdin(&["solve"], GOLDWASSER);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("incompletable"));
    assert!(stdout_of(&output).is_empty());
}

#[test]
fn check_ryser_reports_deficits() {
    let square = "3\n1 2 .\n2 1 .\n. . .\n";
    let output = run_with_stdin(&["check-ryser"], square);
    assert_eq!(output.status.code(), Some(1));
    let report = stderr_of(&output);
    assert!(report.contains("not-completable"));
    assert!(report.contains("symbol 3 needs 1 more"));
}

#[test]
fn complete_auto_dispatches_and_validates() {
    // Rectangle path.
    let rect = run_with_stdin(&["complete"], "3\n1 2 3\n. . .\n. . .\n");
    assert_eq!(rect.status.code(), Some(0));
    let done = stdout_of(&rect);
    let solved = run_with_stdin(&["solve"], &done);
    assert_eq!(solved.status.code(), Some(0), "completion is a latin square");
    assert_eq!(stdout_of(&solved), done, "complete squares solve to themselves");
    // Solver path for a general shape.
    let general = run_with_stdin(&["complete"], "3\n1 . .\n. 2 .\n. . 3\n");
    assert_eq!(general.status.code(), Some(0));
}

#[test]
fn complete_rejects_violated_rectangle_with_certificate() {
    let square = "3\n1 2 .\n2 1 .\n. . .\n";
    let output = run_with_stdin(&["complete"], square);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("not completable"));
}

#[test]
fn complete_holes_flow_deficit_certificate() {
    let square = "4\n. . . .\n3 1 . .\n1 2 . .\n2 3 . .\n";
    let output = run_with_stdin(&["complete", "--method", "holes"], square);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("flow deficit"));
}

#[test]
fn realize_golden_minimal_framework() {
    let output = run_with_stdin(&["realize", "--order", "2"], "1 1 2\n1\n1\n");
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "2\n. 2\n2 1\n");
}

#[test]
fn realize_rejects_unbalanced_framework() {
    let output = run_with_stdin(&["realize", "--order", "4"], "1 1 2\n1\n2\n");
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr_of(&output).starts_with("error:"));
}

#[test]
fn latinize_emits_rectangle() {
    let output = run_with_stdin(&["latinize"], "2 2 2\n1 2\n1 2\n1 2\n1 2\n");
    assert_eq!(output.status.code(), Some(0));
    let body = stdout_of(&output);
    assert_eq!(body, "1 2\n2 1\n");
}

#[test]
fn latinize_reports_absence() {
    let output = run_with_stdin(&["latinize"], "1 1 2\n1\n2\n");
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("no latinization"));
}

#[test]
fn reduce_reports_sizes_and_emits_order_112() {
    let hypergraph = "4\n0 1 2 3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n";
    let output = run_with_stdin(&["reduce"], hypergraph);
    assert_eq!(output.status.code(), Some(0));
    let report = stderr_of(&output);
    assert!(report.contains("order: 112"));
    assert!(report.contains("|A| = 16, |B| = 96, |C| = 0"));
    assert!(report.contains("sufficient-condition: satisfied"));
    let body = stdout_of(&output);
    assert!(body.starts_with("112\n"));
}

#[test]
fn reduce_sparse_empties_the_far_block() {
    let hypergraph = "4\n0 1 2 3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n";
    let output = run_with_stdin(&["reduce", "--sparse"], hypergraph);
    assert_eq!(output.status.code(), Some(0));
    // Only the two border strips remain filled: 2 * 16 * 96 cells.
    let body = stdout_of(&output);
    let filled = body
        .lines()
        .skip(1)
        .flat_map(|l| l.split_whitespace())
        .filter(|&t| t != ".")
        .count();
    assert_eq!(filled, 2 * 16 * 96);
    // The one-sided check cannot certify the sparse square; the report says
    // so rather than overclaiming.
    assert!(stderr_of(&output).contains("sufficient-condition: inconclusive"));
}

#[test]
fn reduce_rejects_irregular_hypergraph() {
    let output = run_with_stdin(&["reduce"], "4\n0 1 2 3\n0 1 2 3\n0 1 2 3\n0 1 2 2\n");
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr_of(&output).starts_with("error:"));
}

#[test]
fn gen_is_seed_deterministic() {
    let args = ["gen", "rectangle", "--order", "6", "--rows", "3", "--cols", "4", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(stdout_of(&a), stdout_of(&b));
    assert_eq!(a.status.code(), Some(0));
    let different = run(&["gen", "rectangle", "--order", "6", "--rows", "3", "--cols", "4", "--seed", "10"]);
    assert_ne!(stdout_of(&a), stdout_of(&different));
}

#[test]
fn outputs_are_byte_deterministic() {
    let input = run(&["gen", "holes", "--order", "7", "--rows", "5", "--cols", "4", "--holes", "2", "--seed", "3"]);
    let square = stdout_of(&input);
    let a = run_with_stdin(&["complete"], &square);
    let b = run_with_stdin(&["complete"], &square);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_of(&a), stdout_of(&b));
    let hypergraph = "4\n0 1 2 3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n";
    let r1 = run_with_stdin(&["reduce"], hypergraph);
    let r2 = run_with_stdin(&["reduce"], hypergraph);
    assert_eq!(stdout_of(&r1), stdout_of(&r2));
}

#[test]
fn order_one_square_works_end_to_end() {
    let solved = run_with_stdin(&["solve"], "1\n.\n");
    assert_eq!(solved.status.code(), Some(0));
    assert_eq!(stdout_of(&solved), "1\n1\n");
    let checked = run_with_stdin(&["check-hall"], "1\n.\n");
    assert_eq!(checked.status.code(), Some(0));
}

#[test]
fn parse_errors_are_single_line_and_exit_4() {
    let output = run_with_stdin(&["check-hall"], "6\n1 2 3 4 5 6\n");
    assert_eq!(output.status.code(), Some(4));
    let report = stderr_of(&output);
    assert!(report.starts_with("error:"), "got {report:?}");
    assert_eq!(report.lines().count(), 1);
    // Invalid latin squares are rejected up front too.
    let invalid = run_with_stdin(&["check-hall"], "2\n1 1\n. .\n");
    assert_eq!(invalid.status.code(), Some(4));
    assert!(stderr_of(&invalid).contains("duplicate"));
}

#[test]
fn usage_errors_follow_the_error_contract() {
    let output = run_with_stdin(&["check-hall", "--exhaustive", "--sufficient"], "1\n1\n");
    assert_eq!(output.status.code(), Some(4));
    let report = stderr_of(&output);
    assert!(report.starts_with("error:"), "got {report:?}");
    assert_eq!(report.trim_end().lines().count(), 1);
    // Help still prints normally.
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout_of(&help).contains("check-hall"));
}

#[test]
fn json_input_is_selected_by_extension() {
    let dir = std::env::temp_dir().join(format!("pls-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "grid": [[1, null], [null, 1]]}"#,
    )
    .unwrap();
    let output = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "2\n1 2\n2 1\n");
    std::fs::remove_dir_all(&dir).ok();
}
