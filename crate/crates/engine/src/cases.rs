//! Built-in worked decision problems with their exact expected values:
//! coin gambles with infinite stakes, the classical two-option wager, the
//! many-gods matrix (flat and with a hierarchy of infinities, real and
//! infinitesimal credence profiles), a degrees-of-glory matrix, and an
//! agent whose preference for salvation no finite payment can reverse.
//!
//! Each fixture pairs a [`DecisionProblem`] with expected quantities that
//! the runner recomputes and compares by exact surreal equality.

use std::fmt;

use surreal_core::{par, Classification, Surreal};
use thiserror::Error;

use crate::decision::{DecisionProblem, DominanceVerdict};
use crate::probability::{Credence, StateSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CasesError {
    #[error("unknown case {name:?}")]
    UnknownCase { name: String },
}

/// A named problem plus every quantity it is expected to produce.
#[derive(Debug, Clone)]
pub struct CaseFixture {
    pub name: String,
    pub problem: DecisionProblem,
    /// Exact expected utility per action.
    pub expected_eu: Vec<(String, Surreal)>,
    /// Expected ranking as an ordered partition of actions.
    pub expected_ordering: Vec<Vec<String>>,
    pub expected_dominance: Vec<(String, String, DominanceVerdict)>,
    /// Pairs whose EU gap must classify as positively infinite, the
    /// symbolic certificate that no finite sweetener closes the gap.
    pub infinite_gaps: Vec<(String, String)>,
    /// Event pairs where the first must be strictly more likely, used to
    /// certify rational bets against the most likely hypothesis.
    pub expected_more_likely: Vec<(Vec<String>, Vec<String>)>,
}

impl CaseFixture {
    fn new(name: &str, problem: DecisionProblem) -> Self {
        CaseFixture {
            name: name.to_string(),
            problem,
            expected_eu: Vec::new(),
            expected_ordering: Vec::new(),
            expected_dominance: Vec::new(),
            infinite_gaps: Vec::new(),
            expected_more_likely: Vec::new(),
        }
    }

    fn eu(mut self, action: &str, literal: &str) -> Self {
        self.expected_eu.push((action.to_string(), lit(literal)));
        self
    }

    fn ordering(mut self, classes: &[&[&str]]) -> Self {
        self.expected_ordering = classes
            .iter()
            .map(|class| class.iter().map(|a| a.to_string()).collect())
            .collect();
        self
    }

    fn dominance(mut self, a: &str, b: &str, verdict: DominanceVerdict) -> Self {
        self.expected_dominance
            .push((a.to_string(), b.to_string(), verdict));
        self
    }

    fn infinite_gap(mut self, a: &str, b: &str) -> Self {
        self.infinite_gaps.push((a.to_string(), b.to_string()));
        self
    }

    fn more_likely(mut self, a: &[&str], b: &[&str]) -> Self {
        self.expected_more_likely.push((
            a.iter().map(|s| s.to_string()).collect(),
            b.iter().map(|s| s.to_string()).collect(),
        ));
        self
    }
}

fn lit(text: &str) -> Surreal {
    text.parse()
        .unwrap_or_else(|e| panic!("builtin literal {text:?}: {e}"))
}

fn problem(actions: &[&str], states: &[(&str, &str)], rows: &[&[&str]]) -> DecisionProblem {
    let space = StateSpace::new(states.iter().map(|(l, _)| *l)).expect("builtin states");
    let credence = Credence::new(
        space,
        states
            .iter()
            .map(|(l, m)| (l.to_string(), lit(m)))
            .collect(),
    )
    .expect("builtin credence");
    DecisionProblem::new(
        actions.iter().map(|a| a.to_string()).collect(),
        credence,
        rows.iter()
            .map(|row| row.iter().map(|v| lit(v)).collect())
            .collect(),
    )
    .expect("builtin matrix")
}

/// One coin gamble as a single-action problem.
fn gamble(name: &str, heads_mass: &str, heads: &str, tails: &str, expected: &str) -> CaseFixture {
    let tails_mass = lit(&format!("1 - {heads_mass}"));
    let space = StateSpace::new(["Heads", "Tails"]).expect("coin states");
    let credence = Credence::new(
        space,
        vec![
            ("Heads".to_string(), lit(heads_mass)),
            ("Tails".to_string(), tails_mass),
        ],
    )
    .expect("coin credence");
    let problem = DecisionProblem::new(
        vec!["take".to_string()],
        credence,
        vec![vec![lit(heads), lit(tails)]],
    )
    .expect("gamble matrix");
    CaseFixture::new(name, problem)
        .eu("take", expected)
        .ordering(&[&["take"]])
}

fn hierarchy_matrix(states: &[(&str, &str)]) -> DecisionProblem {
    problem(
        &["Zeusian", "Athenian", "Apollinist", "Atheist"],
        states,
        &[
            &["w_100", "w_0", "-w_5", "100"],
            &["-w_100", "w_0", "-w_5", "100"],
            &["-w_100", "w_0", "-w_5", "100"],
            &["-w_100", "w_0", "w_137", "100"],
        ],
    )
}

pub fn builtin_cases() -> Vec<CaseFixture> {
    let mut fixtures = vec![
        gamble("g1", "0.5", "w", "0", "1/2*w"),
        gamble("g2", "0.5", "w", "10000", "1/2*w + 5000"),
        gamble("g3", "0.5", "w", "-10000", "1/2*w - 5000"),
        gamble("g4", "0.5", "w", "-w", "0"),
        gamble("g5", "0.9", "w", "-w", "4/5*w"),
        gamble("g6", "0.1", "w", "-w", "-4/5*w"),
        CaseFixture::new(
            "g-series",
            problem(
                &["G1", "G2", "G3"],
                &[("Heads", "0.5"), ("Tails", "0.5")],
                &[&["w", "0"], &["w", "10000"], &["w", "-10000"]],
            ),
        )
        .eu("G1", "1/2*w")
        .eu("G2", "1/2*w + 5000")
        .eu("G3", "1/2*w - 5000")
        .ordering(&[&["G2"], &["G1"], &["G3"]])
        .dominance("G2", "G1", DominanceVerdict::StrictlyDominates)
        .dominance("G2", "G3", DominanceVerdict::StrictlyDominates)
        .dominance("G1", "G3", DominanceVerdict::StrictlyDominates)
        .dominance("G1", "G2", DominanceVerdict::None),
        CaseFixture::new(
            "table1",
            problem(
                &["Christian", "NonChristian"],
                &[("God", "0.5"), ("NoGod", "0.5")],
                &[&["w", "10"], &["5", "10"]],
            ),
        )
        .eu("Christian", "1/2*w + 5")
        .eu("NonChristian", "15/2")
        .ordering(&[&["Christian"], &["NonChristian"]])
        .dominance("Christian", "NonChristian", DominanceVerdict::StrictlyDominates),
        CaseFixture::new(
            "table2-profile1",
            problem(
                &["Zeusian", "Athenian", "Apollinist", "Atheist"],
                &[
                    ("Zeus", "0.5"),
                    ("Athena", "0.3"),
                    ("Apollo", "0.1"),
                    ("Atheism", "0.1"),
                ],
                &[
                    &["w", "w", "-w", "100"],
                    &["-w", "w", "-w", "100"],
                    &["-w", "w", "-w", "100"],
                    &["-w", "w", "w", "100"],
                ],
            ),
        )
        .eu("Zeusian", "7/10*w + 10")
        .eu("Atheist", "-1/10*w + 10")
        .eu("Athenian", "-3/10*w + 10")
        .eu("Apollinist", "-3/10*w + 10")
        .ordering(&[&["Zeusian"], &["Atheist"], &["Athenian", "Apollinist"]]),
        CaseFixture::new(
            "table2-profile2",
            problem(
                &["Zeusian", "Athenian", "Apollinist", "Atheist"],
                &[
                    ("Zeus", "0.1"),
                    ("Athena", "0.2"),
                    ("Apollo", "0.2"),
                    ("Atheism", "0.5"),
                ],
                &[
                    &["w", "w", "-w", "100"],
                    &["-w", "w", "-w", "100"],
                    &["-w", "w", "-w", "100"],
                    &["-w", "w", "w", "100"],
                ],
            ),
        )
        .eu("Atheist", "3/10*w + 50")
        .eu("Zeusian", "1/10*w + 50")
        .eu("Athenian", "-1/10*w + 50")
        .eu("Apollinist", "-1/10*w + 50")
        .ordering(&[&["Atheist"], &["Zeusian"], &["Athenian", "Apollinist"]]),
        CaseFixture::new(
            "table3-real",
            hierarchy_matrix(&[
                ("Zeus", "0.5"),
                ("Athena", "0.3"),
                ("Apollo", "0.1"),
                ("Atheism", "0.1"),
            ]),
        )
        .eu("Zeusian", "1/2*w_100 + 3/10*w - 1/10*w_5 + 10")
        .eu("Atheist", "-1/2*w_100 + 3/10*w + 1/10*w_137 + 10")
        .eu("Athenian", "-1/2*w_100 + 3/10*w - 1/10*w_5 + 10")
        .ordering(&[&["Atheist"], &["Zeusian"], &["Athenian", "Apollinist"]]),
        CaseFixture::new(
            "table3-infinitesimal",
            hierarchy_matrix(&[
                ("Zeus", "0.5"),
                ("Athena", "0.3"),
                ("Apollo", "w^(-w^137)"),
                ("Atheism", "1/5 - w^(-w^137)"),
            ]),
        )
        .eu(
            "Zeusian",
            "1/2*w_100 + 3/10*w - w^(w^5 - w^137) + 20 - 100*w^(-w^137)",
        )
        .eu("Atheist", "-1/2*w_100 + 3/10*w + 21 - 100*w^(-w^137)")
        .eu(
            "Athenian",
            "-1/2*w_100 + 3/10*w - w^(w^5 - w^137) + 20 - 100*w^(-w^137)",
        )
        .ordering(&[&["Zeusian"], &["Atheist"], &["Athenian", "Apollinist"]]),
        CaseFixture::new(
            "degrees-of-glory",
            problem(
                &["Zeusian", "Athenian", "Atheist"],
                &[
                    ("Zeus&Good", "0.1"),
                    ("Zeus&Bad", "0.5"),
                    ("Athena&Good", "0.3"),
                    ("Athena&Bad", "0.1"),
                    ("Atheism", "0"),
                ],
                &[
                    &["w^2", "w", "-w", "-w", "100"],
                    &["-w", "-w", "w^2", "w", "100"],
                    &["-w", "-w", "-w", "-w", "100"],
                ],
            ),
        )
        .eu("Zeusian", "1/10*w^2 + 1/10*w")
        .eu("Athenian", "3/10*w^2 - 1/2*w")
        .eu("Atheist", "-w")
        .ordering(&[&["Athenian"], &["Zeusian"], &["Atheist"]])
        // the most likely god is Zeus, yet wagering on Athena wins
        .more_likely(&["Zeus&Good", "Zeus&Bad"], &["Athena&Good", "Athena&Bad"]),
    ];
    fixtures.push(theresa());
    fixtures
}

/// Two w-valued afterlives at credence 3/5 vs 2/5, plus a sweep of finite
/// sweeteners 10^k added to the less likely wager. No offer closes the gap
/// and the gap itself classifies as positively infinite.
fn theresa() -> CaseFixture {
    let mut actions = vec!["Odinist".to_string(), "Raist".to_string()];
    let mut rows = vec![vec![lit("w"), lit("0")], vec![lit("0"), lit("w")]];
    let mut sweetened = Vec::new();
    for k in 0..=12u32 {
        let offer = 10i64.pow(k);
        let name = format!("Raist+{offer}");
        actions.push(name.clone());
        rows.push(vec![lit(&offer.to_string()), lit(&format!("w + {offer}"))]);
        sweetened.push(name);
    }
    let space = StateSpace::new(["Odin", "Ra"]).expect("theresa states");
    let credence = Credence::new(
        space,
        vec![
            ("Odin".to_string(), lit("0.6")),
            ("Ra".to_string(), lit("0.4")),
        ],
    )
    .expect("theresa credence");
    let problem = DecisionProblem::new(actions, credence, rows).expect("theresa matrix");

    let mut fixture = CaseFixture::new("theresa", problem)
        .eu("Odinist", "3/5*w")
        .eu("Raist", "2/5*w");
    for (k, name) in sweetened.iter().enumerate() {
        let offer = 10i64.pow(k as u32);
        fixture = fixture.eu(name, &format!("2/5*w + {offer}"));
    }
    // ranking: Odinist first, then the offers from largest to smallest
    let mut classes: Vec<Vec<String>> = vec![vec!["Odinist".to_string()]];
    for name in sweetened.iter().rev() {
        classes.push(vec![name.clone()]);
    }
    classes.push(vec!["Raist".to_string()]);
    fixture.expected_ordering = classes;
    fixture
        .infinite_gap("Odinist", "Raist+1000000000000")
        .infinite_gap("Odinist", "Raist")
}

pub fn case_names() -> Vec<String> {
    builtin_cases().into_iter().map(|f| f.name).collect()
}

pub fn find_case(name: &str) -> Result<CaseFixture, CasesError> {
    builtin_cases()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| CasesError::UnknownCase {
            name: name.to_string(),
        })
}

/// Copy of a fixture with every expected EU nudged by 1/w: running it must
/// fail on each EU quantity, which certifies that comparisons are exact.
pub fn perturbed(fixture: &CaseFixture) -> CaseFixture {
    let nudge: Surreal = lit("w^-1");
    let mut copy = fixture.clone();
    copy.name = format!("{}-perturbed", fixture.name);
    for (_, expected) in &mut copy.expected_eu {
        *expected = &*expected + &nudge;
    }
    copy
}

#[derive(Debug, Clone)]
pub struct CaseCheck {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub name: String,
    pub checks: Vec<CaseCheck>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        for check in &self.checks {
            if check.pass {
                writeln!(f, "  {} = {}", check.label, check.actual)?;
            } else {
                writeln!(
                    f,
                    "  {} MISMATCH: expected {}, got {}",
                    check.label, check.expected, check.actual
                )?;
            }
        }
        Ok(())
    }
}

fn format_partition(classes: &[Vec<String>]) -> String {
    classes
        .iter()
        .map(|c| format!("[{}]", c.join(", ")))
        .collect::<Vec<_>>()
        .join(" > ")
}

/// Recomputes every expected quantity of a fixture with the decision
/// engine and compares exactly.
pub fn run_case(fixture: &CaseFixture) -> CaseReport {
    let mut checks = Vec::new();
    for (action, expected) in &fixture.expected_eu {
        let (actual, pass) = match fixture.problem.expected_utility(action) {
            Ok(actual) => {
                let pass = &actual == expected;
                (actual.to_string(), pass)
            }
            Err(err) => (err.to_string(), false),
        };
        checks.push(CaseCheck {
            label: format!("EU({action})"),
            expected: expected.to_string(),
            actual,
            pass,
        });
    }
    if !fixture.expected_ordering.is_empty() {
        let actual = fixture.problem.rank().groups();
        checks.push(CaseCheck {
            label: "ordering".to_string(),
            expected: format_partition(&fixture.expected_ordering),
            actual: format_partition(&actual),
            pass: actual == fixture.expected_ordering,
        });
    }
    for (a, b, verdict) in &fixture.expected_dominance {
        let (actual, pass) = match fixture.problem.dominance(a, b) {
            Ok(actual) => (actual.to_string(), actual == *verdict),
            Err(err) => (err.to_string(), false),
        };
        checks.push(CaseCheck {
            label: format!("dominance({a}, {b})"),
            expected: verdict.to_string(),
            actual,
            pass,
        });
    }
    for (a, b) in &fixture.infinite_gaps {
        let (actual, pass) = match (
            fixture.problem.expected_utility(a),
            fixture.problem.expected_utility(b),
        ) {
            (Ok(eu_a), Ok(eu_b)) => {
                let gap = &eu_a - &eu_b;
                (
                    format!("{} ({gap})", gap.classify()),
                    gap.classify() == Classification::PositiveInfinite,
                )
            }
            (Err(err), _) | (_, Err(err)) => (err.to_string(), false),
        };
        checks.push(CaseCheck {
            label: format!("gap({a}, {b})"),
            expected: Classification::PositiveInfinite.to_string(),
            actual,
            pass,
        });
    }
    for (more, less) in &fixture.expected_more_likely {
        let event_a: Vec<&str> = more.iter().map(String::as_str).collect();
        let event_b: Vec<&str> = less.iter().map(String::as_str).collect();
        let credence = fixture.problem.credence();
        let (actual, pass) = match (credence.prob(event_a), credence.prob(event_b)) {
            (Ok(pa), Ok(pb)) => (format!("{pa} vs {pb}"), pa > pb),
            (Err(err), _) | (_, Err(err)) => (err.to_string(), false),
        };
        checks.push(CaseCheck {
            label: format!("more-likely({} | {})", more.join(","), less.join(",")),
            expected: "strictly greater".to_string(),
            actual,
            pass,
        });
    }
    CaseReport {
        name: fixture.name.clone(),
        checks,
    }
}

pub fn run_by_name(name: &str) -> Result<CaseReport, CasesError> {
    Ok(run_case(&find_case(name)?))
}

/// Runs a batch of fixtures, in parallel when the `parallel` feature is on.
pub fn run_all(fixtures: &[CaseFixture]) -> Vec<CaseReport> {
    par::map_collect(fixtures, run_case)
}
