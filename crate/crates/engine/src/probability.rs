//! Finitely-additive, possibly non-Archimedean probability on finite state
//! spaces, with validation against the NAP axioms (domain/range, regularity,
//! normalization, additivity) and the derived range/unit-event facts.

use std::fmt;

use surreal_core::{Surreal, SurrealError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityError {
    #[error("state space must be nonempty")]
    EmptySpace,
    #[error("duplicate state label {label:?}")]
    DuplicateState { label: String },
    #[error("no mass assigned to state {label:?}")]
    MissingState { label: String },
    #[error("unknown state {label:?}")]
    UnknownState { label: String },
    #[error("negative mass {mass} on state {state:?}")]
    NegativeMass { state: String, mass: Surreal },
    #[error("masses sum to {total}, not 1 (deficit {deficit})")]
    NotNormalized { total: Surreal, deficit: Surreal },
    #[error(transparent)]
    Arithmetic(#[from] SurrealError),
}

/// Finite ordered list of distinct state labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    labels: Vec<String>,
}

impl StateSpace {
    pub fn new<I, S>(labels: I) -> Result<Self, ProbabilityError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(ProbabilityError::EmptySpace);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(ProbabilityError::DuplicateState {
                    label: label.clone(),
                });
            }
        }
        Ok(StateSpace { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Surreal-valued probability assignment over a [`StateSpace`]: every mass
/// nonnegative, masses summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Credence {
    space: StateSpace,
    mass: Vec<Surreal>,
}

impl Credence {
    /// Validated constructor: full coverage, no negative mass, exact
    /// normalization.
    pub fn new(
        space: StateSpace,
        masses: Vec<(String, Surreal)>,
    ) -> Result<Self, ProbabilityError> {
        let credence = Self::new_unchecked(space, masses)?;
        for (label, mass) in credence.space.labels().iter().zip(&credence.mass) {
            if mass.sign() == std::cmp::Ordering::Less {
                return Err(ProbabilityError::NegativeMass {
                    state: label.clone(),
                    mass: mass.clone(),
                });
            }
        }
        let total = credence.total();
        if total != Surreal::one() {
            let deficit = &total - &Surreal::one();
            return Err(ProbabilityError::NotNormalized { total, deficit });
        }
        Ok(credence)
    }

    /// Coverage-checked constructor that skips the sign and normalization
    /// checks, for assembling deliberately invalid assignments to feed
    /// through [`Credence::check_nap`].
    pub fn new_unchecked(
        space: StateSpace,
        masses: Vec<(String, Surreal)>,
    ) -> Result<Self, ProbabilityError> {
        let mut mass: Vec<Option<Surreal>> = vec![None; space.len()];
        for (label, value) in masses {
            let index = space
                .index_of(&label)
                .ok_or(ProbabilityError::UnknownState {
                    label: label.clone(),
                })?;
            if mass[index].is_some() {
                return Err(ProbabilityError::DuplicateState { label });
            }
            mass[index] = Some(value);
        }
        let mut filled = Vec::with_capacity(space.len());
        for (index, value) in mass.into_iter().enumerate() {
            match value {
                Some(v) => filled.push(v),
                None => {
                    return Err(ProbabilityError::MissingState {
                        label: space.labels[index].clone(),
                    })
                }
            }
        }
        Ok(Credence {
            space,
            mass: filled,
        })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn mass_of(&self, label: &str) -> Result<&Surreal, ProbabilityError> {
        let index = self
            .space
            .index_of(label)
            .ok_or(ProbabilityError::UnknownState {
                label: label.to_string(),
            })?;
        Ok(&self.mass[index])
    }

    pub(crate) fn mass_by_index(&self, index: usize) -> &Surreal {
        &self.mass[index]
    }

    fn total(&self) -> Surreal {
        self.mass
            .iter()
            .fold(Surreal::zero(), |acc, m| &acc + m)
    }

    /// Probability of an event given as a set of state labels; duplicates
    /// are ignored. `prob([]) = 0` and `prob(all states) = 1`.
    pub fn prob<'a, I>(&self, event: I) -> Result<Surreal, ProbabilityError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = 0u64;
        for label in event {
            let index = self
                .space
                .index_of(label)
                .ok_or(ProbabilityError::UnknownState {
                    label: label.to_string(),
                })?;
            mask |= 1 << index;
        }
        Ok(self.prob_mask(mask))
    }

    fn prob_mask(&self, mask: u64) -> Surreal {
        let mut total = Surreal::zero();
        for (index, mass) in self.mass.iter().enumerate() {
            if mask & (1 << index) != 0 {
                total = &total + mass;
            }
        }
        total
    }

    /// Conditional probability `prob(a and b) / prob(b)` by exact division.
    /// Errors if `prob(b)` is zero or the quotient has no finite normal form
    /// within the term budget.
    pub fn conditional<'a, I, J>(
        &self,
        a: I,
        b: J,
        term_budget: usize,
    ) -> Result<Surreal, ProbabilityError>
    where
        I: IntoIterator<Item = &'a str>,
        J: IntoIterator<Item = &'a str>,
    {
        let a_mask = self.event_mask(a)?;
        let b_mask = self.event_mask(b)?;
        let joint = self.prob_mask(a_mask & b_mask);
        let given = self.prob_mask(b_mask);
        Ok(joint.div_exact(&given, term_budget)?)
    }

    fn event_mask<'a, I>(&self, event: I) -> Result<u64, ProbabilityError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = 0u64;
        for label in event {
            let index = self
                .space
                .index_of(label)
                .ok_or(ProbabilityError::UnknownState {
                    label: label.to_string(),
                })?;
            mask |= 1 << index;
        }
        Ok(mask)
    }

    fn mask_labels(&self, mask: u64) -> Vec<String> {
        self.space
            .labels
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// Validates the NAP axioms plus the derived range and unit-event facts.
    ///
    /// The additivity scan is exhaustive over all disjoint event pairs
    /// (3^n) and the range scans over all events (2^n); intended for the
    /// small spaces this engine works with. Regularity failures make the
    /// report fail only when `require_regularity` is set, but are always
    /// listed.
    pub fn check_nap(&self, require_regularity: bool) -> NapReport {
        let n = self.space.len();
        let mut checks = Vec::new();

        checks.push(NapCheck {
            name: "NAP0",
            status: NapStatus::Pass,
            required: true,
            detail: "events are the full powerset of a finite space; masses are surreal-valued"
                .to_string(),
            counterexample: Vec::new(),
        });

        // Regularity: P(empty) = 0 structurally; every nonempty event has
        // positive mass iff every singleton does.
        let mut nap1 = NapCheck {
            name: "NAP1",
            status: NapStatus::Pass,
            required: require_regularity,
            detail: "P(empty) = 0 and every nonempty event has positive probability".to_string(),
            counterexample: Vec::new(),
        };
        for (index, mass) in self.mass.iter().enumerate() {
            if mass.sign() != std::cmp::Ordering::Greater {
                let label = self.space.labels[index].clone();
                nap1.status = NapStatus::Fail;
                nap1.detail = format!("P({{{label}}}) = {mass} is not positive");
                nap1.counterexample = vec![label];
                break;
            }
        }
        let regular = nap1.status == NapStatus::Pass;
        checks.push(nap1);

        let total = self.total();
        if total == Surreal::one() {
            checks.push(NapCheck {
                name: "NAP2",
                status: NapStatus::Pass,
                required: true,
                detail: "P(whole space) = 1".to_string(),
                counterexample: Vec::new(),
            });
        } else {
            let deficit = &total - &Surreal::one();
            checks.push(NapCheck {
                name: "NAP2",
                status: NapStatus::Fail,
                required: true,
                detail: format!("masses sum to {total}; deficit {deficit}"),
                counterexample: self.space.labels.clone(),
            });
        }

        // Additivity over every disjoint pair: each state is in A, in B, or
        // in neither.
        let mut nap3 = NapCheck {
            name: "NAP3",
            status: NapStatus::Pass,
            required: true,
            detail: "P(A or B) = P(A) + P(B) for all disjoint A, B".to_string(),
            counterexample: Vec::new(),
        };
        let assignments = 3u64.pow(n as u32);
        'outer: for code in 0..assignments {
            let mut rest = code;
            let mut a_mask = 0u64;
            let mut b_mask = 0u64;
            for index in 0..n {
                match rest % 3 {
                    1 => a_mask |= 1 << index,
                    2 => b_mask |= 1 << index,
                    _ => {}
                }
                rest /= 3;
            }
            let union = self.prob_mask(a_mask | b_mask);
            let split = &self.prob_mask(a_mask) + &self.prob_mask(b_mask);
            if union != split {
                nap3.status = NapStatus::Fail;
                nap3.detail = format!(
                    "P(A or B) = {union} but P(A) + P(B) = {split} for A = {:?}, B = {:?}",
                    self.mask_labels(a_mask),
                    self.mask_labels(b_mask)
                );
                nap3.counterexample = self.mask_labels(a_mask | b_mask);
                break 'outer;
            }
        }
        checks.push(nap3);

        // Derived fact: P(A) in [0,1] for every event.
        let mut fact1 = NapCheck {
            name: "fact-range",
            status: NapStatus::Pass,
            required: true,
            detail: "P(A) lies in [0,1] for every event".to_string(),
            counterexample: Vec::new(),
        };
        // Derived fact: P(A) = 1 exactly when A is the whole space; holds
        // under regularity.
        let mut fact2 = NapCheck {
            name: "fact-unit-event",
            status: if regular {
                NapStatus::Pass
            } else {
                NapStatus::Skipped
            },
            required: require_regularity,
            detail: if regular {
                "P(A) = 1 exactly when A is the whole space".to_string()
            } else {
                "skipped: regularity does not hold".to_string()
            },
            counterexample: Vec::new(),
        };
        let full = (1u64 << n) - 1;
        for mask in 0..=full {
            let p = self.prob_mask(mask);
            if fact1.status == NapStatus::Pass
                && (p.sign() == std::cmp::Ordering::Less || p > Surreal::one())
            {
                fact1.status = NapStatus::Fail;
                fact1.detail = format!("P(A) = {p} for A = {:?}", self.mask_labels(mask));
                fact1.counterexample = self.mask_labels(mask);
            }
            if regular && fact2.status == NapStatus::Pass && (p == Surreal::one()) != (mask == full)
            {
                fact2.status = NapStatus::Fail;
                fact2.detail = format!(
                    "P(A) = {p} for proper event A = {:?}",
                    self.mask_labels(mask)
                );
                fact2.counterexample = self.mask_labels(mask);
            }
        }
        checks.push(fact1);
        checks.push(fact2);

        NapReport {
            require_regularity,
            checks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NapStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct NapCheck {
    pub name: &'static str,
    pub status: NapStatus,
    /// Whether this check counts toward [`NapReport::passed`].
    pub required: bool,
    pub detail: String,
    /// Offending event, when a failure has one.
    pub counterexample: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct NapReport {
    pub require_regularity: bool,
    pub checks: Vec<NapCheck>,
}

impl NapReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !c.required || c.status != NapStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&NapCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for NapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let status = match check.status {
                NapStatus::Pass => "pass",
                NapStatus::Fail => "FAIL",
                NapStatus::Skipped => "skipped",
            };
            writeln!(f, "{:<16} {status} - {}", check.name, check.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Surreal {
        text.parse().unwrap()
    }

    fn masses(pairs: &[(&str, &str)]) -> Vec<(String, Surreal)> {
        pairs
            .iter()
            .map(|(label, value)| (label.to_string(), s(value)))
            .collect()
    }

    fn pantheon() -> StateSpace {
        StateSpace::new(["Zeus", "Athena", "Apollo", "Atheism"]).unwrap()
    }

    #[test]
    fn accepts_real_and_infinitesimal_profiles() {
        Credence::new(
            pantheon(),
            masses(&[("Zeus", "0.5"), ("Athena", "0.3"), ("Apollo", "0.1"), ("Atheism", "0.1")]),
        )
        .unwrap();
        Credence::new(
            pantheon(),
            masses(&[
                ("Zeus", "0.5"),
                ("Athena", "0.3"),
                ("Apollo", "w^(-w^137)"),
                ("Atheism", "1/5 - w^(-w^137)"),
            ]),
        )
        .unwrap();
        Credence::new(
            StateSpace::new(["only"]).unwrap(),
            masses(&[("only", "1")]),
        )
        .unwrap();
    }

    #[test]
    fn rejects_invalid_assignments() {
        let err = Credence::new(
            pantheon(),
            masses(&[("Zeus", "0.5"), ("Athena", "0.5"), ("Apollo", "0"), ("Atheism", "w^-1")]),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ProbabilityError::NotNormalized {
                total: s("1 + w^-1"),
                deficit: s("w^-1"),
            }
        );

        let err = Credence::new(
            pantheon(),
            masses(&[("Zeus", "1.5"), ("Athena", "-0.5"), ("Apollo", "0"), ("Atheism", "0")]),
        )
        .unwrap_err();
        assert!(matches!(err, ProbabilityError::NegativeMass { state, .. } if state == "Athena"));

        let err = Credence::new(
            pantheon(),
            masses(&[("Zeus", "1")]),
        )
        .unwrap_err();
        assert!(matches!(err, ProbabilityError::MissingState { label } if label == "Athena"));
    }

    #[test]
    fn probabilities_of_events() {
        let cr = Credence::new(
            pantheon(),
            masses(&[("Zeus", "0.5"), ("Athena", "0.3"), ("Apollo", "0.1"), ("Atheism", "0.1")]),
        )
        .unwrap();
        assert_eq!(cr.prob([]).unwrap(), Surreal::zero());
        assert_eq!(
            cr.prob(["Zeus", "Athena", "Apollo", "Atheism"]).unwrap(),
            Surreal::one()
        );
        assert_eq!(cr.prob(["Zeus", "Apollo"]).unwrap(), s("3/5"));
        assert_eq!(cr.prob(["Zeus", "Zeus"]).unwrap(), s("1/2"));
        assert!(matches!(
            cr.prob(["Hera"]),
            Err(ProbabilityError::UnknownState { .. })
        ));
    }

    #[test]
    fn conditional_is_an_exact_ratio() {
        let cr = Credence::new(
            pantheon(),
            masses(&[("Zeus", "0.5"), ("Athena", "0.3"), ("Apollo", "0.1"), ("Atheism", "0.1")]),
        )
        .unwrap();
        assert_eq!(
            cr.conditional(["Zeus"], ["Zeus", "Athena"], 8).unwrap(),
            s("5/8")
        );
        assert!(matches!(
            cr.conditional(["Zeus"], [], 8),
            Err(ProbabilityError::Arithmetic(SurrealError::ZeroDivision))
        ));
    }

    #[test]
    fn nap_report_on_regular_infinitesimal_credence() {
        let cr = Credence::new(
            pantheon(),
            masses(&[
                ("Zeus", "0.5"),
                ("Athena", "0.3"),
                ("Apollo", "w^(-w^137)"),
                ("Atheism", "1/5 - w^(-w^137)"),
            ]),
        )
        .unwrap();
        let report = cr.check_nap(true);
        assert!(report.passed(), "{report}");
        assert!(report.checks.iter().all(|c| c.status == NapStatus::Pass));
    }

    #[test]
    fn nap1_failure_names_the_zero_singleton() {
        let cr = Credence::new(
            pantheon(),
            masses(&[("Zeus", "0.6"), ("Athena", "0.4"), ("Apollo", "0"), ("Atheism", "0")]),
        )
        .unwrap();
        let strict = cr.check_nap(true);
        assert!(!strict.passed());
        assert_eq!(strict.check("NAP1").unwrap().counterexample, vec!["Apollo"]);
        // fact 2 only applies under regularity
        assert_eq!(strict.check("fact-unit-event").unwrap().status, NapStatus::Skipped);
        // without the regularity requirement the same credence is fine
        assert!(cr.check_nap(false).passed());
    }

    #[test]
    fn nap2_failure_reports_exact_deficit() {
        let cr = Credence::new_unchecked(
            pantheon(),
            masses(&[("Zeus", "0.5"), ("Athena", "0.5"), ("Apollo", "w^-1"), ("Atheism", "0")]),
        )
        .unwrap();
        let report = cr.check_nap(false);
        assert!(!report.passed());
        let nap2 = report.check("NAP2").unwrap();
        assert_eq!(nap2.status, NapStatus::Fail);
        assert!(nap2.detail.contains("deficit w^-1"), "{}", nap2.detail);
    }
}
