//! Preference-input file format for the `vnm` subcommands.
//!
//! Utility form (induces an expected-utility oracle; the sample is the
//! point lotteries plus any extras):
//!
//! ```text
//! outcomes: a, b, c
//!
//! [utility]
//! a = 0
//! b = 3/4
//! c = 1
//!
//! [lotteries]           # optional extra sample lotteries
//! mid: a = 1/2, c = 1/2
//! ```
//!
//! Table form (a literal preference table over named point lotteries, for
//! axiom-violation demonstrations):
//!
//! ```text
//! outcomes: x, y, z
//!
//! [preferences]
//! x > y
//! y > z
//! z > x
//! ```

use surreal_core::{parse_with, ParseOptions, Surreal};
use surreal_engine::vnm::{EuOracle, Lottery, Preference, PreferenceOracle, TableOracle};

use crate::problem_file::FileError;

pub enum LoadedOracle {
    Eu(EuOracle),
    Table(TableOracle),
}

impl LoadedOracle {
    pub fn as_dyn(&self) -> &dyn PreferenceOracle {
        match self {
            LoadedOracle::Eu(oracle) => oracle,
            LoadedOracle::Table(oracle) => oracle,
        }
    }

    pub fn is_eu(&self) -> bool {
        matches!(self, LoadedOracle::Eu(_))
    }
}

pub struct VnmFile {
    pub oracle: LoadedOracle,
    pub sample: Vec<Lottery>,
}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError {
        line,
        message: message.into(),
    }
}

enum Section {
    Preamble,
    Utility,
    Lotteries,
    Preferences,
}

pub fn parse_vnm_file(text: &str, options: &ParseOptions) -> Result<VnmFile, FileError> {
    let mut outcomes: Option<Vec<String>> = None;
    let mut utility: Vec<(String, Surreal)> = Vec::new();
    let mut extra_lotteries: Vec<(String, Lottery)> = Vec::new();
    let mut preferences: Vec<(String, String, Preference)> = Vec::new();
    let mut saw_preferences = false;
    let mut section = Section::Preamble;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = match raw.find('#') {
            Some(at) => raw[..at].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err(line_no, "unterminated section header"))?;
            section = match name {
                "utility" => Section::Utility,
                "lotteries" => Section::Lotteries,
                "preferences" => {
                    saw_preferences = true;
                    Section::Preferences
                }
                other => return Err(err(line_no, format!("unknown section [{other}]"))),
            };
            continue;
        }
        match section {
            Section::Preamble => {
                if let Some(rest) = line.strip_prefix("outcomes:") {
                    outcomes = Some(
                        rest.split(',')
                            .map(|l| l.trim().to_string())
                            .filter(|l| !l.is_empty())
                            .collect(),
                    );
                } else {
                    return Err(err(line_no, "expected 'outcomes:' or a section header"));
                }
            }
            Section::Utility => {
                let (outcome, value) = line
                    .split_once('=')
                    .ok_or_else(|| err(line_no, "expected '='"))?;
                let value = parse_with(value.trim(), options)
                    .map_err(|e| err(line_no, e.to_string()))?;
                utility.push((outcome.trim().to_string(), value));
            }
            Section::Lotteries => {
                let (name, rest) = line
                    .split_once(':')
                    .ok_or_else(|| err(line_no, "expected ':'"))?;
                let mut probs = Vec::new();
                for part in rest.split(',') {
                    let (outcome, value) = part
                        .split_once('=')
                        .ok_or_else(|| err(line_no, "expected '='"))?;
                    let value = parse_with(value.trim(), options)
                        .map_err(|e| err(line_no, e.to_string()))?;
                    probs.push((outcome.trim().to_string(), value));
                }
                let lottery =
                    Lottery::new(probs).map_err(|e| err(line_no, e.to_string()))?;
                extra_lotteries.push((name.trim().to_string(), lottery));
            }
            Section::Preferences => {
                let (left, op, right) = split_relation(line)
                    .ok_or_else(|| err(line_no, "expected '<', '>', or '~'"))?;
                let answer = match op {
                    '<' => Preference::Prec,
                    '>' => Preference::Succ,
                    _ => Preference::Sim,
                };
                preferences.push((left, right, answer));
            }
        }
    }

    let outcomes = outcomes.ok_or_else(|| err(0, "missing 'outcomes:' declaration"))?;
    if outcomes.is_empty() {
        return Err(err(0, "'outcomes:' lists no outcomes"));
    }

    if saw_preferences {
        if !utility.is_empty() {
            return Err(err(0, "use either [utility] or [preferences], not both"));
        }
        let lotteries: Vec<(String, Lottery)> = outcomes
            .iter()
            .map(|o| (o.clone(), Lottery::point(o.clone())))
            .collect();
        let sample: Vec<Lottery> = lotteries.iter().map(|(_, l)| l.clone()).collect();
        let oracle = TableOracle::new(lotteries, preferences)
            .map_err(|e| err(0, e.to_string()))?;
        return Ok(VnmFile {
            oracle: LoadedOracle::Table(oracle),
            sample,
        });
    }

    if utility.is_empty() {
        return Err(err(0, "missing [utility] or [preferences] section"));
    }
    for outcome in &outcomes {
        if !utility.iter().any(|(o, _)| o == outcome) {
            return Err(err(0, format!("no utility for outcome {outcome:?}")));
        }
    }
    let mut sample: Vec<Lottery> = outcomes.iter().map(Lottery::point).collect();
    sample.extend(extra_lotteries.into_iter().map(|(_, l)| l));
    Ok(VnmFile {
        oracle: LoadedOracle::Eu(EuOracle::new(utility)),
        sample,
    })
}

fn split_relation(line: &str) -> Option<(String, char, String)> {
    for op in ['<', '>', '~'] {
        if let Some((left, right)) = line.split_once(op) {
            return Some((left.trim().to_string(), op, right.trim().to_string()));
        }
    }
    None
}
