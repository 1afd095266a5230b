//! Expected-utility evaluation, ranking, statewise dominance, and
//! mixed-strategy analysis for finite decision matrices with surreal
//! utilities and credences.

use std::fmt;

use surreal_core::{par, Rational, Surreal};
use thiserror::Error;

use crate::probability::{Credence, ProbabilityError, StateSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("decision problem needs at least one action")]
    NoActions,
    #[error("duplicate action label {label:?}")]
    DuplicateAction { label: String },
    #[error("unknown action {label:?}")]
    UnknownAction { label: String },
    #[error("utility row for {action:?} has {got} entries, expected {expected}")]
    RowShape {
        action: String,
        got: usize,
        expected: usize,
    },
    #[error("missing utility for action {action:?} in state {state:?}")]
    MissingUtility { action: String, state: String },
    #[error("invalid mixture: {reason}")]
    InvalidMixture { reason: String },
    #[error(transparent)]
    Probability(#[from] ProbabilityError),
}

/// Actions x states utility matrix plus a credence over the states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionProblem {
    actions: Vec<String>,
    credence: Credence,
    utility: Vec<Vec<Surreal>>,
}

impl DecisionProblem {
    /// Builds a problem from utility rows given in action declaration
    /// order, each row covering the credence's states in order.
    pub fn new(
        actions: Vec<String>,
        credence: Credence,
        utility_rows: Vec<Vec<Surreal>>,
    ) -> Result<Self, DecisionError> {
        if actions.is_empty() {
            return Err(DecisionError::NoActions);
        }
        for (i, action) in actions.iter().enumerate() {
            if actions[..i].contains(action) {
                return Err(DecisionError::DuplicateAction {
                    label: action.clone(),
                });
            }
        }
        if utility_rows.len() != actions.len() {
            return Err(DecisionError::RowShape {
                action: actions
                    .get(utility_rows.len())
                    .cloned()
                    .unwrap_or_else(|| "<extra row>".to_string()),
                got: utility_rows.len(),
                expected: actions.len(),
            });
        }
        let states = credence.space().len();
        for (action, row) in actions.iter().zip(&utility_rows) {
            if row.len() != states {
                return Err(DecisionError::RowShape {
                    action: action.clone(),
                    got: row.len(),
                    expected: states,
                });
            }
        }
        Ok(DecisionProblem {
            actions,
            credence,
            utility: utility_rows,
        })
    }

    /// Builds a problem from individual `(action, state, utility)` cells;
    /// every cell of the matrix must appear exactly once.
    pub fn from_cells(
        actions: Vec<String>,
        credence: Credence,
        cells: Vec<(String, String, Surreal)>,
    ) -> Result<Self, DecisionError> {
        let states = credence.space().len();
        let mut rows: Vec<Vec<Option<Surreal>>> = vec![vec![None; states]; actions.len()];
        for (action, state, value) in cells {
            let a = actions
                .iter()
                .position(|x| *x == action)
                .ok_or(DecisionError::UnknownAction {
                    label: action.clone(),
                })?;
            let s = credence
                .space()
                .index_of(&state)
                .ok_or(ProbabilityError::UnknownState {
                    label: state.clone(),
                })?;
            rows[a][s] = Some(value);
        }
        let mut utility = Vec::with_capacity(actions.len());
        for (a, row) in rows.into_iter().enumerate() {
            let mut filled = Vec::with_capacity(states);
            for (s, cell) in row.into_iter().enumerate() {
                match cell {
                    Some(v) => filled.push(v),
                    None => {
                        return Err(DecisionError::MissingUtility {
                            action: actions[a].clone(),
                            state: credence.space().labels()[s].clone(),
                        })
                    }
                }
            }
            utility.push(filled);
        }
        Self::new(actions, credence, utility)
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn space(&self) -> &StateSpace {
        self.credence.space()
    }

    pub fn credence(&self) -> &Credence {
        &self.credence
    }

    pub fn utility(&self, action: &str, state: &str) -> Result<&Surreal, DecisionError> {
        let a = self.action_index(action)?;
        let s = self
            .space()
            .index_of(state)
            .ok_or(ProbabilityError::UnknownState {
                label: state.to_string(),
            })?;
        Ok(&self.utility[a][s])
    }

    fn action_index(&self, action: &str) -> Result<usize, DecisionError> {
        self.actions
            .iter()
            .position(|a| a == action)
            .ok_or(DecisionError::UnknownAction {
                label: action.to_string(),
            })
    }

    fn eu_by_index(&self, action: usize) -> Surreal {
        let mut total = Surreal::zero();
        for (state, utility) in self.utility[action].iter().enumerate() {
            total = &total + &(self.credence.mass_by_index(state) * utility);
        }
        total
    }

    /// Exact expected utility of one action: the credence-weighted sum of
    /// its row.
    pub fn expected_utility(&self, action: &str) -> Result<Surreal, DecisionError> {
        Ok(self.eu_by_index(self.action_index(action)?))
    }

    /// Expected utilities of every action, in declaration order.
    pub fn eu_table(&self) -> Vec<(String, Surreal)> {
        self.actions
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), self.eu_by_index(i)))
            .collect()
    }

    /// Groups actions into EU-equivalence classes, classes strictly
    /// descending by expected utility, declaration order within a class.
    pub fn rank(&self) -> Ranking {
        let eus: Vec<Surreal> = (0..self.actions.len())
            .map(|i| self.eu_by_index(i))
            .collect();
        let mut order: Vec<usize> = (0..self.actions.len()).collect();
        order.sort_by(|&i, &j| eus[j].cmp(&eus[i])); // stable: ties keep declaration order
        let mut classes: Vec<RankedClass> = Vec::new();
        for index in order {
            match classes.last_mut() {
                Some(class) if class.eu == eus[index] => {
                    class.actions.push(self.actions[index].clone())
                }
                _ => classes.push(RankedClass {
                    actions: vec![self.actions[index].clone()],
                    eu: eus[index].clone(),
                }),
            }
        }
        Ranking { classes }
    }

    /// Statewise dominance verdict: weak means at least as good in every
    /// state, strict additionally better in some state.
    pub fn dominance(&self, a: &str, b: &str) -> Result<DominanceVerdict, DecisionError> {
        Ok(self.dominance_detail(a, b)?.verdict)
    }

    /// Dominance plus the strict states and whether any of them carries
    /// positive credence (i.e. whether strictness shows up in EU).
    pub fn dominance_detail(&self, a: &str, b: &str) -> Result<DominanceDetail, DecisionError> {
        let ia = self.action_index(a)?;
        let ib = self.action_index(b)?;
        let mut weak = true;
        let mut strict_states = Vec::new();
        let mut strict_backed_by_credence = false;
        for state in 0..self.space().len() {
            match self.utility[ia][state].cmp(&self.utility[ib][state]) {
                std::cmp::Ordering::Less => weak = false,
                std::cmp::Ordering::Greater => {
                    strict_states.push(self.space().labels()[state].clone());
                    if self.credence.mass_by_index(state).sign() == std::cmp::Ordering::Greater {
                        strict_backed_by_credence = true;
                    }
                }
                std::cmp::Ordering::Equal => {}
            }
        }
        let verdict = if !weak {
            DominanceVerdict::None
        } else if strict_states.is_empty() {
            DominanceVerdict::WeaklyDominates
        } else {
            DominanceVerdict::StrictlyDominates
        };
        Ok(DominanceDetail {
            verdict,
            strict_states,
            strict_backed_by_credence,
        })
    }

    /// Exact expected utility of a mixture: the weight-weighted sum of the
    /// pure expected utilities.
    pub fn mixture_eu(&self, mixture: &Mixture) -> Result<Surreal, DecisionError> {
        let table: Vec<Surreal> = (0..self.actions.len())
            .map(|i| self.eu_by_index(i))
            .collect();
        self.mixture_eu_with(mixture, &table)
    }

    fn mixture_eu_with(
        &self,
        mixture: &Mixture,
        eu_table: &[Surreal],
    ) -> Result<Surreal, DecisionError> {
        let mut total = Surreal::zero();
        for (action, weight) in &mixture.weights {
            let index = self
                .actions
                .iter()
                .position(|a| a == action)
                .ok_or_else(|| DecisionError::InvalidMixture {
                    reason: format!("mixture names unknown action {action:?}"),
                })?;
            total = &total + &(weight * &eu_table[index]);
        }
        Ok(total)
    }

    /// Evaluates every grid mixture against the best pure action: the best
    /// pure EU must be at least every mixture EU, strictly unless the
    /// mixture is supported entirely on EU-maximal actions. Grid entries
    /// are evaluated in parallel.
    pub fn pure_beats_mixtures(&self, grid: &[Mixture]) -> Result<MixtureSweep, DecisionError> {
        let eu_table: Vec<Surreal> = (0..self.actions.len())
            .map(|i| self.eu_by_index(i))
            .collect();
        let best_eu = eu_table.iter().max().expect("at least one action").clone();
        let best_actions: Vec<String> = self
            .actions
            .iter()
            .zip(&eu_table)
            .filter(|(_, eu)| **eu == best_eu)
            .map(|(a, _)| a.clone())
            .collect();

        let evaluated: Vec<Result<Surreal, DecisionError>> =
            par::map_collect(grid, |mixture| self.mixture_eu_with(mixture, &eu_table));

        let mut sweep = MixtureSweep {
            best_actions: best_actions.clone(),
            best_eu: best_eu.clone(),
            total: grid.len(),
            proper: 0,
            proper_strictly_beaten: 0,
            ties: 0,
            violations: Vec::new(),
        };
        for (mixture, result) in grid.iter().zip(evaluated) {
            let eu = result?;
            let proper = mixture.support().count() > 1;
            if proper {
                sweep.proper += 1;
            }
            let on_argmax = mixture
                .support()
                .all(|(action, _)| best_actions.iter().any(|b| b == action));
            if on_argmax {
                if eu == best_eu {
                    sweep.ties += 1;
                } else {
                    sweep.violations.push(SweepViolation {
                        mixture: mixture.clone(),
                        mixture_eu: eu,
                        reason: "mixture over EU-maximal actions must tie the best pure EU"
                            .to_string(),
                    });
                }
            } else if eu < best_eu {
                if proper {
                    sweep.proper_strictly_beaten += 1;
                }
            } else {
                sweep.violations.push(SweepViolation {
                    mixture: mixture.clone(),
                    mixture_eu: eu,
                    reason: "mixture off the argmax set must fall strictly below the best pure EU"
                        .to_string(),
                });
            }
        }
        Ok(sweep)
    }

    /// Default analysis grid: dyadics `k/resolution` between the two
    /// actions of a binary problem; point mixtures plus the uniform mixture
    /// otherwise.
    pub fn default_grid(&self, resolution: u32) -> Vec<Mixture> {
        if self.actions.len() == 2 {
            let n = resolution.max(1) as i64;
            (0..=n)
                .map(|k| {
                    Mixture::new(vec![
                        (
                            self.actions[0].clone(),
                            Surreal::from_rational(Rational::new(k, n)),
                        ),
                        (
                            self.actions[1].clone(),
                            Surreal::from_rational(Rational::new(n - k, n)),
                        ),
                    ])
                    .expect("grid weights sum to 1")
                })
                .collect()
        } else {
            let mut grid: Vec<Mixture> = self
                .actions
                .iter()
                .map(|a| Mixture::point(a.clone()))
                .collect();
            let n = self.actions.len() as i64;
            grid.push(
                Mixture::new(
                    self.actions
                        .iter()
                        .map(|a| (a.clone(), Surreal::from_rational(Rational::new(1, n))))
                        .collect(),
                )
                .expect("uniform weights sum to 1"),
            );
            grid
        }
    }
}

/// Surreal-weighted probability mixture over actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mixture {
    weights: Vec<(String, Surreal)>,
}

impl Mixture {
    /// Validates nonnegative weights summing to exactly 1.
    pub fn new(weights: Vec<(String, Surreal)>) -> Result<Self, DecisionError> {
        for (i, (action, weight)) in weights.iter().enumerate() {
            if weights[..i].iter().any(|(other, _)| other == action) {
                return Err(DecisionError::InvalidMixture {
                    reason: format!("action {action:?} listed twice"),
                });
            }
            if weight.sign() == std::cmp::Ordering::Less {
                return Err(DecisionError::InvalidMixture {
                    reason: format!("negative weight {weight} on {action:?}"),
                });
            }
        }
        let total = weights
            .iter()
            .fold(Surreal::zero(), |acc, (_, w)| &acc + w);
        if total != Surreal::one() {
            return Err(DecisionError::InvalidMixture {
                reason: format!("weights sum to {total}, not 1"),
            });
        }
        Ok(Mixture { weights })
    }

    /// Degenerate mixture putting all weight on one action.
    pub fn point(action: impl Into<String>) -> Self {
        Mixture {
            weights: vec![(action.into(), Surreal::one())],
        }
    }

    /// `t`-weighted blend of two mixtures, `t` in [0,1].
    pub fn blend(t: &Surreal, a: &Mixture, b: &Mixture) -> Result<Self, DecisionError> {
        if t.sign() == std::cmp::Ordering::Less || t > &Surreal::one() {
            return Err(DecisionError::InvalidMixture {
                reason: format!("blend weight {t} outside [0,1]"),
            });
        }
        let rest = &Surreal::one() - t;
        let mut weights: Vec<(String, Surreal)> = Vec::new();
        for (action, weight) in &a.weights {
            weights.push((action.clone(), t * weight));
        }
        for (action, weight) in &b.weights {
            let contribution = &rest * weight;
            match weights.iter_mut().find(|(existing, _)| existing == action) {
                Some((_, w)) => *w = &*w + &contribution,
                None => weights.push((action.clone(), contribution)),
            }
        }
        weights.retain(|(_, w)| !w.is_zero());
        Mixture::new(weights)
    }

    pub fn weights(&self) -> &[(String, Surreal)] {
        &self.weights
    }

    /// Entries with strictly positive weight.
    pub fn support(&self) -> impl Iterator<Item = (&String, &Surreal)> {
        self.weights
            .iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(a, w)| (a, w))
    }
}

impl fmt::Display for Mixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (action, weight)) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{action}: {weight}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceVerdict {
    /// At least as good in every state and strictly better in some state.
    StrictlyDominates,
    /// At least as good in every state.
    WeaklyDominates,
    None,
}

impl fmt::Display for DominanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DominanceVerdict::StrictlyDominates => "strict",
            DominanceVerdict::WeaklyDominates => "weak",
            DominanceVerdict::None => "none",
        })
    }
}

#[derive(Debug, Clone)]
pub struct DominanceDetail {
    pub verdict: DominanceVerdict,
    /// States where the first action is strictly better.
    pub strict_states: Vec<String>,
    /// True when some strict state has positive credence, so strict
    /// dominance also separates the expected utilities.
    pub strict_backed_by_credence: bool,
}

/// Ordered partition of actions into EU-equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    classes: Vec<RankedClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedClass {
    pub actions: Vec<String>,
    pub eu: Surreal,
}

impl Ranking {
    pub fn classes(&self) -> &[RankedClass] {
        &self.classes
    }

    /// The partition as plain label groups.
    pub fn groups(&self) -> Vec<Vec<String>> {
        self.classes.iter().map(|c| c.actions.clone()).collect()
    }

    pub fn winner_class(&self) -> &[String] {
        &self.classes[0].actions
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "[{}]", class.actions.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of sweeping a mixture grid against the best pure action.
#[derive(Debug, Clone)]
pub struct MixtureSweep {
    pub best_actions: Vec<String>,
    pub best_eu: Surreal,
    pub total: usize,
    /// Mixtures with at least two actions in support.
    pub proper: usize,
    pub proper_strictly_beaten: usize,
    /// Grid entries supported on the argmax set, which tie exactly.
    pub ties: usize,
    pub violations: Vec<SweepViolation>,
}

#[derive(Debug, Clone)]
pub struct SweepViolation {
    pub mixture: Mixture,
    pub mixture_eu: Surreal,
    pub reason: String,
}

impl MixtureSweep {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}
