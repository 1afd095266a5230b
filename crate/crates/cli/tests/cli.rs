//! End-to-end tests of the `surreal` binary: output shapes, exit codes,
//! env-var overrides, and agreement between the fixture files and the
//! built-in cases.

use std::path::PathBuf;
use std::process::{Command, Output};

use surreal_core::ParseOptions;
use surreal_cli::problem_file::ProblemFile;
use surreal_engine::cases;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn surreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surreal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn eval_prints_value_class_and_standard_part() {
    let out = surreal(&["eval", "0.9*w - 0.1*w"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4/5*w (PositiveInfinite)\n");

    let out = surreal(&["eval", "w - w"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 (Zero)\nstandard part: 0\n");

    let out = surreal(&["eval", "1/2*w^-1 + 7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "7 + 1/2*w^-1 (FiniteAppreciable)\nstandard part: 7\n"
    );
}

#[test]
fn eval_reports_inexact_division() {
    let out = surreal(&["eval", "1/(w+1)"]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("no exact quotient"), "{stderr}");

    // opt-in truncation returns a flagged approximation instead
    let out = surreal(&["eval", "1/(w+1)", "--truncate", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("w^-1 - w^-2 + w^-3 (Infinitesimal)"), "{text}");
    assert!(text.contains("inexact"), "{text}");
}

#[test]
fn eval_diagnoses_syntax_and_depth_errors() {
    let out = surreal(&["eval", "1 +"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("syntax error"));

    let tower = "w^(w^(w^(w^(w^(w^(w^(w^2)))))))";
    let out = surreal(&["eval", tower]);
    assert_eq!(code(&out), 2);
    let out = surreal(&["eval", tower, "--depth", "16"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn solve_ranks_the_many_gods_problem() {
    let path = fixture("table2-profile1");
    let out = surreal(&["solve", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("Zeusian     7/10*w + 10"), "{text}");
    assert!(
        text.contains("ranking  [Zeusian] > [Atheist] > [Athenian, Apollinist]"),
        "{text}"
    );
}

#[test]
fn solve_single_action_file_is_trivial() {
    let path = fixture("g4");
    let out = surreal(&["solve", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("take  0"), "{text}");
    assert!(text.contains("ranking  [take]"), "{text}");
    assert!(text.contains("single action"), "{text}");
}

#[test]
fn solve_shows_the_gamble_dominance_matrix() {
    let path = fixture("g-series");
    let out = surreal(&["solve", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("G2 vs G1: strict (strict in Tails)"), "{text}");
    assert!(text.contains("G2 vs G3: strict"), "{text}");
    assert!(text.contains("G1 vs G2: none"), "{text}");
}

#[test]
fn solve_handles_multiple_files_in_order() {
    let first = fixture("g4");
    let second = fixture("g5");
    let out = surreal(&[
        "solve",
        first.to_str().unwrap(),
        second.to_str().unwrap(),
        "--machine",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let g4_at = text.find("file=").unwrap();
    let g5_at = text.rfind("file=").unwrap();
    assert!(text[g4_at..g5_at].contains("eu.take=0"), "{text}");
    assert!(text[g5_at..].contains("eu.take=4/5*w"), "{text}");
}

#[test]
fn solve_regularity_flag_rejects_zero_credence_states() {
    let path = fixture("degrees-of-glory");
    let out = surreal(&["solve", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = surreal(&["solve", path.to_str().unwrap(), "--require-regularity"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("Atheism"));
}

#[test]
fn machine_output_is_stable_across_runs() {
    let path = fixture("table3-infinitesimal");
    let first = surreal(&["solve", path.to_str().unwrap(), "--machine"]);
    let second = surreal(&["solve", path.to_str().unwrap(), "--machine"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(
        text.contains(
            "eu.Zeusian=1/2*w^(w^100) + 3/10*w + 20 - w^(-w^137 + w^5) - 100*w^(-w^137)"
        ),
        "{text}"
    );
}

#[test]
fn machine_flag_can_come_from_the_environment() {
    let path = fixture("table1");
    let out = Command::new(env!("CARGO_BIN_EXE_surreal"))
        .args(["solve", path.to_str().unwrap()])
        .env("SURREAL_MACHINE", "true")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("file="));
}

#[test]
fn mix_reports_the_grid_sweep() {
    let path = fixture("table1");
    let out = surreal(&["mix", path.to_str().unwrap(), "--grid", "32"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.contains("pure strategy strictly beats 31/31 proper mixtures"),
        "{text}"
    );
    assert!(text.contains("named mixture fair-coin"), "{text}");
}

#[test]
fn vnm_check_passes_for_utility_files_and_fails_for_cycles() {
    let out = surreal(&["vnm", "check", fixture("vnm-3outcomes").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for axiom in ["completeness", "transitivity", "continuity", "independence"] {
        assert!(text.contains(&format!("{axiom}")), "{text}");
    }
    assert_eq!(text.matches("pass").count(), 4, "{text}");

    let out = surreal(&["vnm", "check", fixture("vnm-intransitive").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("transitivity   FAIL"));
}

#[test]
fn vnm_construct_recovers_infinitesimal_utilities() {
    let out = surreal(&[
        "vnm",
        "construct",
        fixture("vnm-hierarchy").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("U({b: 1}) = w^-1"), "{text}");
    assert!(text.contains("U({c: 1}) = 1"), "{text}");
}

#[test]
fn cases_run_green_and_verify_the_control() {
    let out = surreal(&["cases"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("table3-infinitesimal: pass"), "{text}");
    assert!(text.contains("exactness control: perturbed table2-profile1 rejected"), "{text}");

    let out = surreal(&["cases", "--machine"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("control=detected"));

    let out = surreal(&["cases", "no-such-case"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fixture_files_match_the_builtin_cases() {
    // the files double as format documentation; each must reproduce its
    // built-in problem exactly
    for name in [
        "g4",
        "g5",
        "g6",
        "g-series",
        "table1",
        "table2-profile1",
        "table2-profile2",
        "table3-real",
        "table3-infinitesimal",
        "degrees-of-glory",
        "theresa",
    ] {
        let text = std::fs::read_to_string(fixture(name)).expect("fixture file");
        let (from_file, _) = ProblemFile::parse(&text, &ParseOptions::default())
            .and_then(ProblemFile::into_problem)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        let builtin = cases::find_case(name).expect("builtin case").problem;
        assert_eq!(from_file.eu_table(), builtin.eu_table(), "EU tables for {name}");
        assert_eq!(
            from_file.rank().groups(),
            builtin.rank().groups(),
            "ranking for {name}"
        );
    }
}
