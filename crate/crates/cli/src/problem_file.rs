//! Line-oriented decision-problem file format.
//!
//! ```text
//! # comments run to end of line
//! states: God, NoGod
//! actions: Christian, NonChristian
//!
//! [utility]
//! Christian: w, 10
//! NonChristian: 5, 10
//!
//! [credence]
//! God = 1/2
//! NoGod = 1/2
//!
//! [mixtures]            # optional
//! fair-coin: Christian = 1/2, NonChristian = 1/2
//! ```
//!
//! Utility rows follow the declared state order. All values use the
//! surreal literal grammar, so files are exact.

use surreal_core::{parse_with, ParseOptions, Surreal};
use surreal_engine::decision::{DecisionProblem, Mixture};
use surreal_engine::probability::{Credence, StateSpace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub utility: Vec<(String, Vec<Surreal>)>,
    pub credence: Vec<(String, Surreal)>,
    pub mixtures: Vec<(String, Mixture)>,
}

#[derive(PartialEq)]
enum Section {
    Preamble,
    Utility,
    Credence,
    Mixtures,
}

impl ProblemFile {
    pub fn parse(text: &str, options: &ParseOptions) -> Result<Self, FileError> {
        let mut states: Option<Vec<String>> = None;
        let mut actions: Option<Vec<String>> = None;
        let mut utility: Vec<(String, Vec<Surreal>)> = Vec::new();
        let mut credence: Vec<(String, Surreal)> = Vec::new();
        let mut mixtures: Vec<(String, Mixture)> = Vec::new();
        let mut section = Section::Preamble;

        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| err(line_no, "unterminated section header"))?;
                section = match name {
                    "utility" => Section::Utility,
                    "credence" => Section::Credence,
                    "mixtures" => Section::Mixtures,
                    other => return Err(err(line_no, format!("unknown section [{other}]"))),
                };
                continue;
            }
            match section {
                Section::Preamble => {
                    if let Some(rest) = line.strip_prefix("states:") {
                        states = Some(split_labels(rest));
                    } else if let Some(rest) = line.strip_prefix("actions:") {
                        actions = Some(split_labels(rest));
                    } else {
                        return Err(err(
                            line_no,
                            "expected 'states:', 'actions:', or a section header",
                        ));
                    }
                }
                Section::Utility => {
                    let (action, rest) = split_once(line, ':', line_no)?;
                    let values = rest
                        .split(',')
                        .map(|v| parse_value(v, options, line_no))
                        .collect::<Result<Vec<_>, _>>()?;
                    utility.push((action, values));
                }
                Section::Credence => {
                    let (state, rest) = split_once(line, '=', line_no)?;
                    credence.push((state, parse_value(&rest, options, line_no)?));
                }
                Section::Mixtures => {
                    let (name, rest) = split_once(line, ':', line_no)?;
                    let mut weights = Vec::new();
                    for part in rest.split(',') {
                        let (action, value) = split_once(part, '=', line_no)?;
                        weights.push((action, parse_value(&value, options, line_no)?));
                    }
                    let mixture = Mixture::new(weights)
                        .map_err(|e| err(line_no, format!("mixture {name:?}: {e}")))?;
                    mixtures.push((name, mixture));
                }
            }
        }

        let states = states.ok_or_else(|| err(0, "missing 'states:' declaration"))?;
        let actions = actions.ok_or_else(|| err(0, "missing 'actions:' declaration"))?;
        if utility.is_empty() {
            return Err(err(0, "missing [utility] section"));
        }
        if credence.is_empty() {
            return Err(err(0, "missing [credence] section"));
        }
        Ok(ProblemFile {
            states,
            actions,
            utility,
            credence,
            mixtures,
        })
    }

    /// Validates the sections into an engine problem plus any named
    /// mixtures.
    pub fn into_problem(self) -> Result<(DecisionProblem, Vec<(String, Mixture)>), FileError> {
        let space =
            StateSpace::new(self.states.clone()).map_err(|e| err(0, e.to_string()))?;
        let credence = Credence::new(space, self.credence)
            .map_err(|e| err(0, format!("[credence] {e}")))?;

        let mut rows: Vec<Option<Vec<Surreal>>> = vec![None; self.actions.len()];
        for (action, values) in self.utility {
            let index = self
                .actions
                .iter()
                .position(|a| *a == action)
                .ok_or_else(|| err(0, format!("[utility] unknown action {action:?}")))?;
            if values.len() != self.states.len() {
                return Err(err(
                    0,
                    format!(
                        "[utility] row {action:?} has {} entries, expected {}",
                        values.len(),
                        self.states.len()
                    ),
                ));
            }
            if rows[index].replace(values).is_some() {
                return Err(err(0, format!("[utility] duplicate row for {action:?}")));
            }
        }
        let mut utility = Vec::with_capacity(self.actions.len());
        for (index, row) in rows.into_iter().enumerate() {
            utility.push(row.ok_or_else(|| {
                err(
                    0,
                    format!("[utility] missing row for {:?}", self.actions[index]),
                )
            })?);
        }
        let problem = DecisionProblem::new(self.actions, credence, utility)
            .map_err(|e| err(0, e.to_string()))?;
        Ok((problem, self.mixtures))
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(at) => &line[..at],
        None => line,
    }
}

fn split_labels(text: &str) -> Vec<String> {
    text.split(',')
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty())
        .collect()
}

fn split_once(line: &str, sep: char, line_no: usize) -> Result<(String, String), FileError> {
    let (left, right) = line
        .split_once(sep)
        .ok_or_else(|| err(line_no, format!("expected '{sep}'")))?;
    Ok((left.trim().to_string(), right.trim().to_string()))
}

fn parse_value(text: &str, options: &ParseOptions, line_no: usize) -> Result<Surreal, FileError> {
    parse_with(text.trim(), options).map_err(|e| err(line_no, format!("{:?}: {e}", text.trim())))
}
