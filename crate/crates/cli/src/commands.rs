//! Command implementations shared by the binary and the integration tests.
//! Each command renders a deterministic report (human table or line-oriented
//! `key=value` records under `--machine`) and signals whether every
//! requested check passed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use surreal_core::{par, ParseOptions, Surreal, SurrealError};
use surreal_engine::cases::{self, CaseReport};
use surreal_engine::decision::{DecisionProblem, DominanceVerdict, Mixture};
use surreal_engine::vnm::{self, AxiomStatus};
use thiserror::Error;

use crate::expr::{self, EvalOptions};
use crate::problem_file::{FileError, ProblemFile};
use crate::vnm_file;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    File { path: PathBuf, source: FileError },
    #[error("{source}")]
    Eval {
        #[from]
        source: SurrealError,
    },
    #[error("{message}")]
    Other { message: String },
}

/// Options shared by every subcommand.
#[derive(Debug, Clone)]
pub struct GlobalOptions {
    pub machine: bool,
    pub depth_bound: usize,
}

impl GlobalOptions {
    fn parse_options(&self) -> ParseOptions {
        ParseOptions {
            depth_bound: self.depth_bound,
        }
    }
}

/// Rendered report plus whether all requested checks passed.
pub struct CommandOutput {
    pub stdout: String,
    pub ok: bool,
}

impl CommandOutput {
    fn passing(stdout: String) -> Self {
        CommandOutput { stdout, ok: true }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_problem(
    path: &Path,
    options: &ParseOptions,
) -> Result<(DecisionProblem, Vec<(String, Mixture)>), CliError> {
    let text = read_file(path)?;
    ProblemFile::parse(&text, options)
        .and_then(ProblemFile::into_problem)
        .map_err(|source| CliError::File {
            path: path.to_path_buf(),
            source,
        })
}

pub fn cmd_eval(
    text: &str,
    truncate: Option<usize>,
    global: &GlobalOptions,
) -> Result<CommandOutput, CliError> {
    let options = EvalOptions {
        depth_bound: global.depth_bound,
        truncate,
        ..EvalOptions::default()
    };
    let outcome = expr::eval(text, &options)?;
    let value = &outcome.value;
    let class = value.classify();
    let mut out = String::new();
    if global.machine {
        writeln!(out, "value={value}").unwrap();
        writeln!(out, "class={class}").unwrap();
        if let Ok(std_part) = value.standard_part() {
            writeln!(out, "std={std_part}").unwrap();
        }
        if outcome.truncated {
            writeln!(out, "truncated=true").unwrap();
        }
    } else {
        writeln!(out, "{value} ({class})").unwrap();
        if let Ok(std_part) = value.standard_part() {
            writeln!(out, "standard part: {std_part}").unwrap();
        }
        if outcome.truncated {
            writeln!(out, "inexact: quotient truncated at the term budget").unwrap();
        }
    }
    Ok(CommandOutput::passing(out))
}

pub fn cmd_solve(
    files: &[PathBuf],
    require_regularity: bool,
    global: &GlobalOptions,
) -> Result<CommandOutput, CliError> {
    run_per_file(files, global, |path, global| {
        solve_one(path, require_regularity, global)
    })
}

/// Renders one file's report; independent files run in parallel while
/// output stays in argument order.
fn run_per_file<F>(
    files: &[PathBuf],
    global: &GlobalOptions,
    per_file: F,
) -> Result<CommandOutput, CliError>
where
    F: Fn(&Path, &GlobalOptions) -> Result<CommandOutput, CliError> + Sync + Send,
{
    if files.is_empty() {
        return Err(CliError::Other {
            message: "no input files given".to_string(),
        });
    }
    let results: Vec<Result<CommandOutput, CliError>> =
        par::map_collect(files, |path| per_file(path, global));
    let mut stdout = String::new();
    let mut ok = true;
    for result in results {
        let output = result?;
        stdout.push_str(&output.stdout);
        ok &= output.ok;
    }
    Ok(CommandOutput { stdout, ok })
}

fn solve_one(
    path: &Path,
    require_regularity: bool,
    global: &GlobalOptions,
) -> Result<CommandOutput, CliError> {
    let (problem, _) = load_problem(path, &global.parse_options())?;
    let mut out = String::new();
    let mut ok = true;

    let nap = problem.credence().check_nap(require_regularity);
    if require_regularity && !nap.passed() {
        ok = false;
    }

    let eu_table = problem.eu_table();
    let ranking = problem.rank();
    if global.machine {
        writeln!(out, "file={}", path.display()).unwrap();
        for (action, eu) in &eu_table {
            writeln!(out, "eu.{action}={eu}").unwrap();
        }
        for (i, class) in ranking.classes().iter().enumerate() {
            writeln!(out, "rank.{}={}", i + 1, class.actions.join(",")).unwrap();
        }
        for a in problem.actions() {
            for b in problem.actions() {
                if a != b {
                    let verdict = problem.dominance(a, b).expect("declared actions");
                    writeln!(out, "dom.{a}.{b}={verdict}").unwrap();
                }
            }
        }
        if require_regularity {
            writeln!(out, "regularity={}", if nap.passed() { "pass" } else { "fail" }).unwrap();
        }
    } else {
        writeln!(out, "# {}", path.display()).unwrap();
        let width = problem
            .actions()
            .iter()
            .map(|a| a.len())
            .max()
            .unwrap_or(0);
        writeln!(out, "expected utility").unwrap();
        for (action, eu) in &eu_table {
            writeln!(out, "  {action:<width$}  {eu}").unwrap();
        }
        writeln!(out, "ranking  {ranking}").unwrap();
        if problem.actions().len() > 1 {
            writeln!(out, "dominance").unwrap();
            for a in problem.actions() {
                for b in problem.actions() {
                    if a == b {
                        continue;
                    }
                    let detail = problem.dominance_detail(a, b).expect("declared actions");
                    let mut note = String::new();
                    if detail.verdict == DominanceVerdict::StrictlyDominates {
                        note = format!(" (strict in {})", detail.strict_states.join(", "));
                        if !detail.strict_backed_by_credence {
                            note.push_str(" [zero-credence states only]");
                        }
                    }
                    writeln!(out, "  {a} vs {b}: {}{note}", detail.verdict).unwrap();
                }
            }
        } else {
            writeln!(out, "dominance  (single action, nothing to compare)").unwrap();
        }
        if require_regularity {
            write!(out, "{nap}").unwrap();
        }
    }
    Ok(CommandOutput { stdout: out, ok })
}

pub fn cmd_mix(
    files: &[PathBuf],
    grid: u32,
    global: &GlobalOptions,
) -> Result<CommandOutput, CliError> {
    run_per_file(files, global, |path, global| mix_one(path, grid, global))
}

fn mix_one(path: &Path, grid: u32, global: &GlobalOptions) -> Result<CommandOutput, CliError> {
    let (problem, named) = load_problem(path, &global.parse_options())?;
    let grid_mixtures = problem.default_grid(grid);
    let sweep = problem
        .pure_beats_mixtures(&grid_mixtures)
        .map_err(|e| CliError::Other {
            message: format!("{}: {e}", path.display()),
        })?;
    let mut out = String::new();
    if global.machine {
        writeln!(out, "file={}", path.display()).unwrap();
        writeln!(out, "best={}", sweep.best_actions.join(",")).unwrap();
        writeln!(out, "best_eu={}", sweep.best_eu).unwrap();
        writeln!(out, "grid={}", sweep.total).unwrap();
        writeln!(out, "proper={}", sweep.proper).unwrap();
        writeln!(out, "proper_beaten={}", sweep.proper_strictly_beaten).unwrap();
        writeln!(out, "ties={}", sweep.ties).unwrap();
        writeln!(out, "violations={}", sweep.violations.len()).unwrap();
        for (name, mixture) in &named {
            let eu = problem.mixture_eu(mixture).map_err(|e| CliError::Other {
                message: format!("{}: mixture {name:?}: {e}", path.display()),
            })?;
            writeln!(out, "mix.{name}={eu}").unwrap();
        }
    } else {
        writeln!(out, "# {}", path.display()).unwrap();
        writeln!(
            out,
            "best pure action  {} (EU {})",
            sweep.best_actions.join(", "),
            sweep.best_eu
        )
        .unwrap();
        writeln!(out, "grid              {} mixtures", sweep.total).unwrap();
        writeln!(
            out,
            "pure strategy strictly beats {}/{} proper mixtures",
            sweep.proper_strictly_beaten, sweep.proper
        )
        .unwrap();
        if sweep.ties > 0 {
            writeln!(out, "ties at the optimum: {} (argmax-supported)", sweep.ties).unwrap();
        }
        for violation in &sweep.violations {
            writeln!(
                out,
                "VIOLATION {} with EU {}: {}",
                violation.mixture, violation.mixture_eu, violation.reason
            )
            .unwrap();
        }
        for (name, mixture) in &named {
            let eu = problem.mixture_eu(mixture).map_err(|e| CliError::Other {
                message: format!("{}: mixture {name:?}: {e}", path.display()),
            })?;
            let comparison = if eu == sweep.best_eu {
                "ties the best pure action"
            } else {
                "beaten by the best pure action"
            };
            writeln!(out, "named mixture {name}: EU {eu} ({comparison})").unwrap();
        }
    }
    Ok(CommandOutput {
        stdout: out,
        ok: sweep.passed(),
    })
}

/// Grid of dyadic weights `j / 2^depth` in [0, 1].
fn dyadic_weights(depth: u32) -> Vec<Surreal> {
    let denom = 1i64 << depth;
    (0..=denom)
        .map(|j| Surreal::from_rational(surreal_core::Rational::new(j, denom)))
        .collect()
}

pub fn cmd_vnm_check(path: &Path, global: &GlobalOptions) -> Result<CommandOutput, CliError> {
    let text = read_file(path)?;
    let file = vnm_file::parse_vnm_file(&text, &global.parse_options()).map_err(|source| {
        CliError::File {
            path: path.to_path_buf(),
            source,
        }
    })?;
    let report = vnm::check_axioms(file.oracle.as_dyn(), &file.sample, &dyadic_weights(5));
    let mut out = String::new();
    if global.machine {
        writeln!(out, "file={}", path.display()).unwrap();
        for check in &report.checks {
            let status = match &check.status {
                AxiomStatus::Pass => "pass".to_string(),
                AxiomStatus::Fail(_) => "fail".to_string(),
                AxiomStatus::Inconclusive(_) => "inconclusive".to_string(),
            };
            writeln!(out, "axiom.{}={status}", check.name).unwrap();
        }
    } else {
        writeln!(out, "# {}", path.display()).unwrap();
        write!(out, "{report}").unwrap();
    }
    Ok(CommandOutput {
        stdout: out,
        ok: report.passed(),
    })
}

pub fn cmd_vnm_construct(path: &Path, global: &GlobalOptions) -> Result<CommandOutput, CliError> {
    let text = read_file(path)?;
    let file = vnm_file::parse_vnm_file(&text, &global.parse_options()).map_err(|source| {
        CliError::File {
            path: path.to_path_buf(),
            source,
        }
    })?;
    if !file.oracle.is_eu() {
        return Err(CliError::Other {
            message: format!(
                "{}: construct needs a [utility] file; preference tables only support 'check'",
                path.display()
            ),
        });
    }
    let candidates = vnm::default_lambda_candidates();
    let mut out = String::new();
    match vnm::construct_utility(file.oracle.as_dyn(), &file.sample, &candidates) {
        Ok(assignment) => {
            if global.machine {
                writeln!(out, "file={}", path.display()).unwrap();
                writeln!(out, "top={}", assignment.top).unwrap();
                writeln!(out, "bottom={}", assignment.bottom).unwrap();
                for (lottery, value) in &assignment.values {
                    writeln!(out, "u.{lottery}={value}").unwrap();
                }
            } else {
                writeln!(out, "# {}", path.display()).unwrap();
                writeln!(out, "top    {}", assignment.top).unwrap();
                writeln!(out, "bottom {}", assignment.bottom).unwrap();
                for (lottery, value) in &assignment.values {
                    writeln!(out, "U({lottery}) = {value}").unwrap();
                }
            }
            Ok(CommandOutput::passing(out))
        }
        Err(e) => {
            writeln!(out, "construction failed: {e}").unwrap();
            Ok(CommandOutput { stdout: out, ok: false })
        }
    }
}

const CONTROL_BASE: &str = "table2-profile1";

pub fn cmd_cases(
    filter: Option<&str>,
    perturb: bool,
    global: &GlobalOptions,
) -> Result<CommandOutput, CliError> {
    let mut fixtures = cases::builtin_cases();
    if let Some(filter) = filter {
        fixtures.retain(|f| f.name.contains(filter));
        if fixtures.is_empty() {
            return Err(CliError::Other {
                message: format!("no built-in case matches {filter:?}"),
            });
        }
    }
    if perturb {
        fixtures = fixtures.iter().map(cases::perturbed).collect();
    }
    let reports = cases::run_all(&fixtures);
    let mut ok = reports.iter().all(CaseReport::passed);
    let mut out = String::new();
    for report in &reports {
        render_case(&mut out, report, global.machine);
    }

    // With the full set, also prove the exactness control: a fixture
    // perturbed by 1/w must be rejected.
    if filter.is_none() && !perturb {
        let control = cases::perturbed(&cases::find_case(CONTROL_BASE).expect("builtin"));
        let control_report = cases::run_case(&control);
        let detected = !control_report.passed();
        if global.machine {
            writeln!(
                out,
                "control={}",
                if detected { "detected" } else { "MISSED" }
            )
            .unwrap();
        } else if detected {
            writeln!(
                out,
                "exactness control: perturbed {CONTROL_BASE} rejected (as designed)"
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "exactness control FAILED: perturbed {CONTROL_BASE} was not rejected"
            )
            .unwrap();
        }
        ok &= detected;
    }
    Ok(CommandOutput { stdout: out, ok })
}

fn render_case(out: &mut String, report: &CaseReport, machine: bool) {
    if machine {
        writeln!(
            out,
            "case.{}={}",
            report.name,
            if report.passed() { "pass" } else { "fail" }
        )
        .unwrap();
        for check in report.failures() {
            writeln!(
                out,
                "case.{}.{}=expected {} got {}",
                report.name, check.label, check.expected, check.actual
            )
            .unwrap();
        }
    } else if report.passed() {
        writeln!(out, "{}: pass ({} checks)", report.name, report.checks.len()).unwrap();
    } else {
        write!(out, "{report}").unwrap();
    }
}
