//! Executable surreal expected-utility representation machinery: axiom
//! checking (completeness, transitivity, continuity, independence) for a
//! preference oracle over lotteries, and utility construction by locating,
//! for each lottery, the unique top/bottom mixture weight it is indifferent
//! to.

use std::collections::BTreeMap;
use std::fmt;

use surreal_core::{Rational, Surreal, DEFAULT_TERM_BUDGET};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VnmError {
    #[error("invalid lottery: {reason}")]
    InvalidLottery { reason: String },
    #[error("no utility assigned to outcome {outcome:?}")]
    UnknownOutcome { outcome: String },
    #[error("mixture weight {weight} outside [0,1]")]
    WeightOutOfRange { weight: Surreal },
    #[error("sample of lotteries must be nonempty")]
    EmptySample,
    #[error("oracle cannot compare {left} with {right}")]
    CannotCompare { left: String, right: String },
    #[error("no candidate weight is indifferent to {lottery} (candidate set too coarse)")]
    IndifferencePointNotFound { lottery: String },
    #[error("weights {first} and {second} are both indifferent to {lottery}; oracle violates uniqueness")]
    NonUniqueIndifference {
        lottery: String,
        first: Surreal,
        second: Surreal,
    },
    #[error("preference table must cover every ordered pair; missing ({left}, {right})")]
    IncompleteTable { left: String, right: String },
    #[error("unknown lottery name {name:?}")]
    UnknownLotteryName { name: String },
}

/// How the oracle ranks the first lottery against the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    /// Strictly worse.
    Prec,
    /// Indifferent.
    Sim,
    /// Strictly better.
    Succ,
}

impl Preference {
    fn flip(self) -> Preference {
        match self {
            Preference::Prec => Preference::Succ,
            Preference::Sim => Preference::Sim,
            Preference::Succ => Preference::Prec,
        }
    }

    /// Weak preference of the first argument for the second: `x <= y`.
    fn at_most(self) -> bool {
        matches!(self, Preference::Prec | Preference::Sim)
    }
}

/// Probability assignment over a finite outcome set: nonnegative surreal
/// probabilities summing to exactly 1. Zero entries are dropped, so equal
/// lotteries are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lottery {
    probs: BTreeMap<String, Surreal>,
}

impl Lottery {
    pub fn new<I, S>(pairs: I) -> Result<Self, VnmError>
    where
        I: IntoIterator<Item = (S, Surreal)>,
        S: Into<String>,
    {
        let mut probs = BTreeMap::new();
        let mut total = Surreal::zero();
        for (outcome, prob) in pairs {
            let outcome = outcome.into();
            if prob.sign() == std::cmp::Ordering::Less {
                return Err(VnmError::InvalidLottery {
                    reason: format!("negative probability {prob} on {outcome:?}"),
                });
            }
            total = &total + &prob;
            if !prob.is_zero() {
                let previous = probs.insert(outcome.clone(), prob);
                if previous.is_some() {
                    return Err(VnmError::InvalidLottery {
                        reason: format!("outcome {outcome:?} listed twice"),
                    });
                }
            }
        }
        if total != Surreal::one() {
            return Err(VnmError::InvalidLottery {
                reason: format!("probabilities sum to {total}, not 1"),
            });
        }
        Ok(Lottery { probs })
    }

    /// The sure lottery on one outcome.
    pub fn point(outcome: impl Into<String>) -> Self {
        let mut probs = BTreeMap::new();
        probs.insert(outcome.into(), Surreal::one());
        Lottery { probs }
    }

    /// Componentwise mixture `p*x + (1-p)*z`, `p` in [0,1].
    pub fn mix(p: &Surreal, x: &Lottery, z: &Lottery) -> Result<Self, VnmError> {
        if p.sign() == std::cmp::Ordering::Less || p > &Surreal::one() {
            return Err(VnmError::WeightOutOfRange { weight: p.clone() });
        }
        let rest = &Surreal::one() - p;
        let mut probs: BTreeMap<String, Surreal> = BTreeMap::new();
        for (outcome, prob) in &x.probs {
            probs.insert(outcome.clone(), p * prob);
        }
        for (outcome, prob) in &z.probs {
            let share = &rest * prob;
            probs
                .entry(outcome.clone())
                .and_modify(|w| *w = &*w + &share)
                .or_insert(share);
        }
        probs.retain(|_, w| !w.is_zero());
        Ok(Lottery { probs })
    }

    pub fn probs(&self) -> impl Iterator<Item = (&String, &Surreal)> {
        self.probs.iter()
    }

    /// Exact expected utility under an outcome-utility table.
    pub fn expected_utility(
        &self,
        utilities: &BTreeMap<String, Surreal>,
    ) -> Result<Surreal, VnmError> {
        let mut total = Surreal::zero();
        for (outcome, prob) in &self.probs {
            let utility = utilities
                .get(outcome)
                .ok_or_else(|| VnmError::UnknownOutcome {
                    outcome: outcome.clone(),
                })?;
            total = &total + &(prob * utility);
        }
        Ok(total)
    }
}

impl fmt::Display for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (outcome, prob)) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{outcome}: {prob}")?;
        }
        f.write_str("}")
    }
}

/// Comparison authority over lotteries. Answers must be deterministic;
/// `None` means the oracle has no opinion on the pair (partial tables),
/// which the axiom checker reports rather than guessing.
pub trait PreferenceOracle {
    fn prefer(&self, x: &Lottery, y: &Lottery) -> Option<Preference>;

    /// Outcome utilities when the oracle is induced from a utility table,
    /// enabling the exact-division continuity witness.
    fn outcome_utilities(&self) -> Option<&BTreeMap<String, Surreal>> {
        None
    }
}

/// Oracle induced from an outcome-utility table: lotteries compare by
/// exact expected utility.
#[derive(Debug, Clone)]
pub struct EuOracle {
    utilities: BTreeMap<String, Surreal>,
}

impl EuOracle {
    pub fn new<I, S>(utilities: I) -> Self
    where
        I: IntoIterator<Item = (S, Surreal)>,
        S: Into<String>,
    {
        EuOracle {
            utilities: utilities
                .into_iter()
                .map(|(o, u)| (o.into(), u))
                .collect(),
        }
    }

    pub fn utilities(&self) -> &BTreeMap<String, Surreal> {
        &self.utilities
    }
}

impl PreferenceOracle for EuOracle {
    fn prefer(&self, x: &Lottery, y: &Lottery) -> Option<Preference> {
        let ex = x.expected_utility(&self.utilities).ok()?;
        let ey = y.expected_utility(&self.utilities).ok()?;
        Some(match ex.cmp(&ey) {
            std::cmp::Ordering::Less => Preference::Prec,
            std::cmp::Ordering::Equal => Preference::Sim,
            std::cmp::Ordering::Greater => Preference::Succ,
        })
    }

    fn outcome_utilities(&self) -> Option<&BTreeMap<String, Surreal>> {
        Some(&self.utilities)
    }
}

/// Oracle backed by a literal preference table over named lotteries, for
/// axiom-violation demonstrations. Mixture queries outside the table
/// return `None`.
#[derive(Debug, Clone)]
pub struct TableOracle {
    lotteries: Vec<(String, Lottery)>,
    table: BTreeMap<(String, String), Preference>,
}

impl TableOracle {
    /// `preferences` lists `(left, right, answer)` by lottery name; the
    /// mirrored pair is filled in automatically, and every lottery is
    /// indifferent to itself.
    pub fn new(
        lotteries: Vec<(String, Lottery)>,
        preferences: Vec<(String, String, Preference)>,
    ) -> Result<Self, VnmError> {
        let known = |name: &String| lotteries.iter().any(|(n, _)| n == name);
        let mut table = BTreeMap::new();
        for (left, right, answer) in preferences {
            for name in [&left, &right] {
                if !known(name) {
                    return Err(VnmError::UnknownLotteryName { name: name.clone() });
                }
            }
            table.insert((left.clone(), right.clone()), answer);
            table.entry((right, left)).or_insert(answer.flip());
        }
        for (name, _) in &lotteries {
            table
                .entry((name.clone(), name.clone()))
                .or_insert(Preference::Sim);
        }
        Ok(TableOracle { lotteries, table })
    }

    pub fn lotteries(&self) -> &[(String, Lottery)] {
        &self.lotteries
    }

    fn name_of(&self, lottery: &Lottery) -> Option<&String> {
        self.lotteries
            .iter()
            .find(|(_, l)| l == lottery)
            .map(|(n, _)| n)
    }
}

impl PreferenceOracle for TableOracle {
    fn prefer(&self, x: &Lottery, y: &Lottery) -> Option<Preference> {
        let left = self.name_of(x)?;
        let right = self.name_of(y)?;
        self.table.get(&(left.clone(), right.clone())).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail(String),
    /// The check could not be decided with the given grid or table, which
    /// is weaker than a failure.
    Inconclusive(String),
}

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub status: AxiomStatus,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, AxiomStatus::Pass))
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            match &check.status {
                AxiomStatus::Pass => writeln!(f, "{:<14} pass", check.name)?,
                AxiomStatus::Fail(detail) => writeln!(f, "{:<14} FAIL - {detail}", check.name)?,
                AxiomStatus::Inconclusive(detail) => {
                    writeln!(f, "{:<14} inconclusive - {detail}", check.name)?
                }
            }
        }
        Ok(())
    }
}

/// Checks the four representation axioms on a finite lottery sample.
///
/// Continuity witnesses come from the exact-division formula when the
/// oracle exposes outcome utilities, falling back to a scan of `p_grid`;
/// a missing grid witness is reported as inconclusive, not false.
/// Independence is checked as the full biconditional on every sampled
/// triple and grid weight in (0, 1].
pub fn check_axioms(
    oracle: &dyn PreferenceOracle,
    sample: &[Lottery],
    p_grid: &[Surreal],
) -> AxiomReport {
    let completeness = check_completeness(oracle, sample);
    let transitivity = check_transitivity(oracle, sample);
    let continuity = check_continuity(oracle, sample, p_grid);
    let independence = check_independence(oracle, sample, p_grid);
    AxiomReport {
        checks: vec![
            AxiomCheck {
                name: "completeness",
                status: completeness,
            },
            AxiomCheck {
                name: "transitivity",
                status: transitivity,
            },
            AxiomCheck {
                name: "continuity",
                status: continuity,
            },
            AxiomCheck {
                name: "independence",
                status: independence,
            },
        ],
    }
}

fn check_completeness(oracle: &dyn PreferenceOracle, sample: &[Lottery]) -> AxiomStatus {
    for (i, x) in sample.iter().enumerate() {
        for y in &sample[i..] {
            let (Some(forward), Some(backward)) = (oracle.prefer(x, y), oracle.prefer(y, x))
            else {
                return AxiomStatus::Fail(format!("oracle cannot compare {x} with {y}"));
            };
            if forward != backward.flip() {
                return AxiomStatus::Fail(format!(
                    "asymmetric answers on ({x}, {y}): {forward:?} vs {backward:?}"
                ));
            }
            if x == y && forward != Preference::Sim {
                return AxiomStatus::Fail(format!("{x} is not indifferent to itself"));
            }
        }
    }
    AxiomStatus::Pass
}

fn check_transitivity(oracle: &dyn PreferenceOracle, sample: &[Lottery]) -> AxiomStatus {
    let mut undecided = false;
    for x in sample {
        for y in sample {
            for z in sample {
                let (Some(xy), Some(yz), Some(xz)) = (
                    oracle.prefer(x, y),
                    oracle.prefer(y, z),
                    oracle.prefer(x, z),
                ) else {
                    undecided = true;
                    continue;
                };
                if xy.at_most() && yz.at_most() && !xz.at_most() {
                    return AxiomStatus::Fail(format!(
                        "{x} <= {y} and {y} <= {z} but not {x} <= {z}"
                    ));
                }
            }
        }
    }
    if undecided {
        AxiomStatus::Inconclusive("some triples could not be queried".to_string())
    } else {
        AxiomStatus::Pass
    }
}

fn check_continuity(
    oracle: &dyn PreferenceOracle,
    sample: &[Lottery],
    p_grid: &[Surreal],
) -> AxiomStatus {
    let mut undecided: Option<String> = None;
    for x in sample {
        for y in sample {
            for z in sample {
                let (Some(xy), Some(yz)) = (oracle.prefer(x, y), oracle.prefer(y, z)) else {
                    undecided.get_or_insert_with(|| format!("cannot order {x}, {y}, {z}"));
                    continue;
                };
                if !(xy.at_most() && yz.at_most()) {
                    continue; // axiom only constrains chains x <= y <= z
                }
                match continuity_witness(oracle, x, y, z, p_grid) {
                    WitnessOutcome::Found => {}
                    WitnessOutcome::Refuted(detail) => return AxiomStatus::Fail(detail),
                    WitnessOutcome::NotInGrid => {
                        undecided.get_or_insert_with(|| {
                            format!("no witness weight in the grid for ({x}, {y}, {z})")
                        });
                    }
                }
            }
        }
    }
    match undecided {
        Some(detail) => AxiomStatus::Inconclusive(detail),
        None => AxiomStatus::Pass,
    }
}

enum WitnessOutcome {
    Found,
    Refuted(String),
    NotInGrid,
}

/// Looks for `p` with `p*x + (1-p)*z ~ y` given `x <= y <= z`: by the
/// exact ratio of utility gaps when outcome utilities are known, otherwise
/// by scanning the grid.
fn continuity_witness(
    oracle: &dyn PreferenceOracle,
    x: &Lottery,
    y: &Lottery,
    z: &Lottery,
    p_grid: &[Surreal],
) -> WitnessOutcome {
    if let Some(utilities) = oracle.outcome_utilities() {
        let (Ok(ux), Ok(uy), Ok(uz)) = (
            x.expected_utility(utilities),
            y.expected_utility(utilities),
            z.expected_utility(utilities),
        ) else {
            return WitnessOutcome::NotInGrid;
        };
        let witness = if ux == uz {
            // degenerate chain x ~ y ~ z: any weight works, use 1
            Some(Surreal::one())
        } else {
            (&uy - &uz)
                .div_exact(&(&ux - &uz), DEFAULT_TERM_BUDGET)
                .ok()
        };
        if let Some(p) = witness {
            let Ok(mixture) = Lottery::mix(&p, x, z) else {
                return WitnessOutcome::Refuted(format!(
                    "computed witness {p} is not a mixture weight for ({x}, {y}, {z})"
                ));
            };
            return match oracle.prefer(&mixture, y) {
                Some(Preference::Sim) => WitnessOutcome::Found,
                answer => WitnessOutcome::Refuted(format!(
                    "witness {p} for ({x}, {y}, {z}) is not indifferent to {y}: {answer:?}"
                )),
            };
        }
        // exact quotient unavailable; fall through to the grid
    }
    for p in p_grid {
        let Ok(mixture) = Lottery::mix(p, x, z) else {
            continue;
        };
        if oracle.prefer(&mixture, y) == Some(Preference::Sim) {
            return WitnessOutcome::Found;
        }
    }
    WitnessOutcome::NotInGrid
}

fn check_independence(
    oracle: &dyn PreferenceOracle,
    sample: &[Lottery],
    p_grid: &[Surreal],
) -> AxiomStatus {
    let mut undecided = false;
    for x in sample {
        for y in sample {
            for z in sample {
                for p in p_grid {
                    if p.sign() != std::cmp::Ordering::Greater || p > &Surreal::one() {
                        continue; // axiom quantifies over p in (0, 1]
                    }
                    let (Ok(mx), Ok(my)) = (Lottery::mix(p, x, z), Lottery::mix(p, y, z)) else {
                        continue;
                    };
                    let (Some(plain), Some(mixed)) =
                        (oracle.prefer(x, y), oracle.prefer(&mx, &my))
                    else {
                        undecided = true;
                        continue;
                    };
                    // equality of the two three-way answers is the
                    // biconditional in both directions at once
                    if plain != mixed {
                        return AxiomStatus::Fail(format!(
                            "x = {x}, y = {y}, z = {z}, p = {p}: {plain:?} vs {mixed:?}"
                        ));
                    }
                }
            }
        }
    }
    if undecided {
        AxiomStatus::Inconclusive("some mixtures could not be queried".to_string())
    } else {
        AxiomStatus::Pass
    }
}

/// Surreal utility read off the oracle: `value(top) = 1`, `value(bottom) = 0`,
/// and every other sampled lottery gets the unique mixture weight it is
/// indifferent to.
#[derive(Debug, Clone)]
pub struct UtilityAssignment {
    pub values: Vec<(Lottery, Surreal)>,
    pub top: Lottery,
    pub bottom: Lottery,
    /// True when top ~ bottom collapsed the assignment to a constant.
    pub constant: bool,
}

impl UtilityAssignment {
    pub fn value_of(&self, lottery: &Lottery) -> Option<&Surreal> {
        self.values
            .iter()
            .find(|(l, _)| l == lottery)
            .map(|(_, v)| v)
    }
}

/// Builds a utility over the sample by pairwise tournament for the top and
/// bottom, then a candidate scan for each lottery's indifference weight.
/// The scan covers the whole candidate set so a uniqueness violation is
/// reported rather than masked.
pub fn construct_utility(
    oracle: &dyn PreferenceOracle,
    sample: &[Lottery],
    lambda_candidates: &[Surreal],
) -> Result<UtilityAssignment, VnmError> {
    if sample.is_empty() {
        return Err(VnmError::EmptySample);
    }
    let mut top = &sample[0];
    let mut bottom = &sample[0];
    for lottery in &sample[1..] {
        match oracle.prefer(lottery, top) {
            Some(Preference::Succ) => top = lottery,
            Some(_) => {}
            None => {
                return Err(VnmError::CannotCompare {
                    left: lottery.to_string(),
                    right: top.to_string(),
                })
            }
        }
        match oracle.prefer(lottery, bottom) {
            Some(Preference::Prec) => bottom = lottery,
            Some(_) => {}
            None => {
                return Err(VnmError::CannotCompare {
                    left: lottery.to_string(),
                    right: bottom.to_string(),
                })
            }
        }
    }

    if oracle.prefer(top, bottom) == Some(Preference::Sim) {
        // indifferent sample: any constant function represents it
        return Ok(UtilityAssignment {
            values: sample
                .iter()
                .map(|l| (l.clone(), Surreal::zero()))
                .collect(),
            top: top.clone(),
            bottom: bottom.clone(),
            constant: true,
        });
    }

    let mut values = Vec::with_capacity(sample.len());
    for lottery in sample {
        let lambda = find_lambda(oracle, top, bottom, lottery, lambda_candidates)?;
        values.push((lottery.clone(), lambda));
    }
    Ok(UtilityAssignment {
        values,
        top: top.clone(),
        bottom: bottom.clone(),
        constant: false,
    })
}

/// The unique `lambda` with `lambda*top + (1-lambda)*bottom ~ target`,
/// searched over the candidate set.
fn find_lambda(
    oracle: &dyn PreferenceOracle,
    top: &Lottery,
    bottom: &Lottery,
    target: &Lottery,
    candidates: &[Surreal],
) -> Result<Surreal, VnmError> {
    if oracle.prefer(target, top) == Some(Preference::Sim) {
        return Ok(Surreal::one());
    }
    if oracle.prefer(target, bottom) == Some(Preference::Sim) {
        return Ok(Surreal::zero());
    }
    let mut found: Option<Surreal> = None;
    for lambda in candidates {
        let Ok(mixture) = Lottery::mix(lambda, top, bottom) else {
            continue; // out-of-range candidates are skipped silently
        };
        if oracle.prefer(&mixture, target) == Some(Preference::Sim) {
            match &found {
                None => found = Some(lambda.clone()),
                Some(first) if first == lambda => {}
                Some(first) => {
                    return Err(VnmError::NonUniqueIndifference {
                        lottery: target.to_string(),
                        first: first.clone(),
                        second: lambda.clone(),
                    })
                }
            }
        }
    }
    found.ok_or_else(|| VnmError::IndifferencePointNotFound {
        lottery: target.to_string(),
    })
}

#[derive(Debug, Clone)]
pub struct LinearityCheck {
    pub weight: Surreal,
    pub left: Lottery,
    pub right: Lottery,
    pub rederived: Option<Surreal>,
    pub combined: Option<Surreal>,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct LinearityReport {
    pub checks: Vec<LinearityCheck>,
}

impl LinearityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Re-derives `U(a*p + (1-a)*p')` through the indifference-weight search
/// and compares it exactly with `a*U(p) + (1-a)*U(p')`.
pub fn verify_linearity(
    assignment: &UtilityAssignment,
    oracle: &dyn PreferenceOracle,
    mix_samples: &[(Surreal, Lottery, Lottery)],
    lambda_candidates: &[Surreal],
) -> LinearityReport {
    let mut checks = Vec::with_capacity(mix_samples.len());
    for (weight, left, right) in mix_samples {
        let mut check = LinearityCheck {
            weight: weight.clone(),
            left: left.clone(),
            right: right.clone(),
            rederived: None,
            combined: None,
            pass: false,
            note: String::new(),
        };
        let (Some(u_left), Some(u_right)) =
            (assignment.value_of(left), assignment.value_of(right))
        else {
            check.note = "lottery not covered by the assignment".to_string();
            checks.push(check);
            continue;
        };
        let combined =
            &(weight * u_left) + &(&(&Surreal::one() - weight) * u_right);
        check.combined = Some(combined.clone());
        let Ok(blended) = Lottery::mix(weight, left, right) else {
            check.note = format!("weight {weight} outside [0,1]");
            checks.push(check);
            continue;
        };
        if assignment.constant {
            // constant assignment: both sides are the constant
            check.rederived = Some(combined.clone());
            check.pass = true;
            checks.push(check);
            continue;
        }
        match find_lambda(
            oracle,
            &assignment.top,
            &assignment.bottom,
            &blended,
            lambda_candidates,
        ) {
            Ok(lambda) => {
                check.pass = lambda == combined;
                if !check.pass {
                    check.note =
                        format!("rederived {lambda} but combination gives {combined}");
                }
                check.rederived = Some(lambda);
            }
            Err(err) => {
                check.note = err.to_string();
            }
        }
        checks.push(check);
    }
    LinearityReport { checks }
}

/// Default indifference-weight candidates: dyadics of depth <= 10 in [0,1]
/// together with small monomial infinitesimals `d * w^-e` and their
/// two-term dyadic combinations. Covers the weights arising from
/// monomial-valued utilities at these scales; callers with other utility
/// shapes supply their own candidates.
pub fn default_lambda_candidates() -> Vec<Surreal> {
    let mut candidates = Vec::new();
    for denom_pow in 0..=10u32 {
        let denom = 1i64 << denom_pow;
        for numer in 0..=denom {
            candidates.push(Surreal::from_rational(Rational::new(numer, denom)));
        }
    }
    let dyadics_small: Vec<Rational> = (1..=8i64).map(|j| Rational::new(j, 8)).collect();
    let exponents: Vec<Surreal> = (1..=4i64).map(Surreal::from).collect();
    let monomials: Vec<(usize, Surreal)> = exponents
        .iter()
        .enumerate()
        .map(|(i, e)| {
            (
                i,
                Surreal::omega_power(&(-e)).expect("shallow exponent"),
            )
        })
        .collect();
    for (_, monomial) in &monomials {
        for d in &dyadics_small {
            candidates.push(&Surreal::from_rational(d.clone()) * monomial);
        }
    }
    for (i, first) in &monomials {
        for (j, second) in &monomials {
            if i >= j {
                continue;
            }
            for d1 in &dyadics_small {
                for d2 in &dyadics_small {
                    candidates.push(
                        &(&Surreal::from_rational(d1.clone()) * first)
                            + &(&Surreal::from_rational(d2.clone()) * second),
                    );
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Surreal {
        text.parse().unwrap()
    }

    fn eu_oracle(pairs: &[(&str, &str)]) -> EuOracle {
        EuOracle::new(pairs.iter().map(|(o, u)| (o.to_string(), s(u))))
    }

    fn points(outcomes: &[&str]) -> Vec<Lottery> {
        outcomes.iter().map(|o| Lottery::point(*o)).collect()
    }

    fn dyadic_grid(depth: u32) -> Vec<Surreal> {
        let denom = 1i64 << depth;
        (0..=denom)
            .map(|j| Surreal::from_rational(Rational::new(j, denom)))
            .collect()
    }

    #[test]
    fn induced_oracle_orders_by_expected_utility() {
        let oracle = eu_oracle(&[("salvation", "w"), ("mundane", "100")]);
        let salvation = Lottery::point("salvation");
        let mundane = Lottery::point("mundane");
        assert_eq!(
            oracle.prefer(&salvation, &mundane),
            Some(Preference::Succ)
        );
        assert_eq!(oracle.prefer(&salvation, &salvation), Some(Preference::Sim));
        // order on a grid of binary mixtures matches direct EU comparison
        for p in dyadic_grid(3) {
            for q in dyadic_grid(3) {
                let x = Lottery::mix(&p, &salvation, &mundane).unwrap();
                let y = Lottery::mix(&q, &salvation, &mundane).unwrap();
                let ex = x.expected_utility(oracle.utilities()).unwrap();
                let ey = y.expected_utility(oracle.utilities()).unwrap();
                let expected = match ex.cmp(&ey) {
                    std::cmp::Ordering::Less => Preference::Prec,
                    std::cmp::Ordering::Equal => Preference::Sim,
                    std::cmp::Ordering::Greater => Preference::Succ,
                };
                assert_eq!(oracle.prefer(&x, &y), Some(expected));
            }
        }
    }

    #[test]
    fn axioms_pass_for_a_dyadic_eu_oracle() {
        let oracle = eu_oracle(&[("a", "0"), ("b", "1/2"), ("c", "1")]);
        let report = check_axioms(&oracle, &points(&["a", "b", "c"]), &dyadic_grid(4));
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn continuity_witness_can_be_infinitesimal() {
        // point(b) sits between point(c) and point(a) at the infinitesimal
        // weight w / w^2 = w^-1 on the top lottery
        let oracle = eu_oracle(&[("a", "0"), ("b", "w"), ("c", "w^2")]);
        let mixture = Lottery::mix(&s("w^-1"), &Lottery::point("c"), &Lottery::point("a")).unwrap();
        assert_eq!(
            oracle.prefer(&mixture, &Lottery::point("b")),
            Some(Preference::Sim)
        );
        // the checker reaches the same indifference through exact division
        // even though no dyadic grid weight works
        let report = check_axioms(&oracle, &points(&["a", "b", "c"]), &dyadic_grid(4));
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn intransitive_table_fails_transitivity() {
        let lotteries: Vec<(String, Lottery)> = ["x", "y", "z"]
            .iter()
            .map(|n| (n.to_string(), Lottery::point(*n)))
            .collect();
        let oracle = TableOracle::new(
            lotteries.clone(),
            vec![
                ("x".to_string(), "y".to_string(), Preference::Succ),
                ("y".to_string(), "z".to_string(), Preference::Succ),
                ("z".to_string(), "x".to_string(), Preference::Succ),
            ],
        )
        .unwrap();
        let sample: Vec<Lottery> = lotteries.into_iter().map(|(_, l)| l).collect();
        let report = check_axioms(&oracle, &sample, &dyadic_grid(2));
        assert!(matches!(
            report.check("transitivity").unwrap().status,
            AxiomStatus::Fail(_)
        ));
        assert!(matches!(
            report.check("completeness").unwrap().status,
            AxiomStatus::Pass
        ));
        // mixtures are outside the table, so those axioms stay inconclusive
        assert!(matches!(
            report.check("continuity").unwrap().status,
            AxiomStatus::Inconclusive(_)
        ));
    }

    #[test]
    fn constructs_dyadic_utilities() {
        let oracle = eu_oracle(&[("a", "0"), ("b", "3/4"), ("c", "1")]);
        let sample = points(&["a", "b", "c"]);
        let assignment = construct_utility(&oracle, &sample, &dyadic_grid(4)).unwrap();
        assert_eq!(assignment.value_of(&Lottery::point("b")).unwrap(), &s("3/4"));
        assert_eq!(assignment.value_of(&Lottery::point("c")).unwrap(), &s("1"));
        assert_eq!(assignment.value_of(&Lottery::point("a")).unwrap(), &s("0"));
    }

    #[test]
    fn constructs_infinitesimal_utilities() {
        let oracle = eu_oracle(&[("a", "0"), ("b", "w"), ("c", "w^2")]);
        let sample = points(&["a", "b", "c"]);
        let mut candidates = dyadic_grid(4);
        candidates.push(s("w^-1"));
        let assignment = construct_utility(&oracle, &sample, &candidates).unwrap();
        assert_eq!(assignment.value_of(&Lottery::point("b")).unwrap(), &s("w^-1"));
    }

    #[test]
    fn indifferent_sample_yields_a_constant_assignment() {
        let oracle = eu_oracle(&[("a", "5"), ("b", "5")]);
        let assignment =
            construct_utility(&oracle, &points(&["a", "b"]), &dyadic_grid(2)).unwrap();
        assert!(assignment.constant);
        assert_eq!(assignment.value_of(&Lottery::point("a")), Some(&s("0")));
        assert_eq!(assignment.value_of(&Lottery::point("b")), Some(&s("0")));
    }

    #[test]
    fn coarse_candidates_are_reported() {
        let oracle = eu_oracle(&[("a", "0"), ("b", "1/3"), ("c", "1")]);
        let err =
            construct_utility(&oracle, &points(&["a", "b", "c"]), &dyadic_grid(4)).unwrap_err();
        assert!(matches!(err, VnmError::IndifferencePointNotFound { .. }));
    }

    /// Declares every proper mixture indifferent to anything, so several
    /// candidate weights look like indifference points at once.
    struct MixturesAlike;

    impl PreferenceOracle for MixturesAlike {
        fn prefer(&self, x: &Lottery, _: &Lottery) -> Option<Preference> {
            if x.probs().count() > 1 {
                Some(Preference::Sim)
            } else {
                Some(Preference::Prec)
            }
        }
    }

    #[test]
    fn non_unique_indifference_is_detected() {
        let top = Lottery::point("t");
        let bottom = Lottery::point("b");
        let target = Lottery::point("m");
        let candidates = [s("1/4"), s("1/2")];
        let err = find_lambda(&MixturesAlike, &top, &bottom, &target, &candidates).unwrap_err();
        assert!(matches!(err, VnmError::NonUniqueIndifference { .. }));
    }

    #[test]
    fn uniqueness_holds_for_eu_oracles() {
        // at most one candidate is ever indifferent to a fixed target
        let oracle = eu_oracle(&[("a", "0"), ("b", "5/8"), ("c", "1")]);
        let top = Lottery::point("c");
        let bottom = Lottery::point("a");
        let target = Lottery::point("b");
        let mut hits = 0;
        for lambda in dyadic_grid(6) {
            let mixture = Lottery::mix(&lambda, &top, &bottom).unwrap();
            if oracle.prefer(&mixture, &target) == Some(Preference::Sim) {
                hits += 1;
            }
        }
        assert_eq!(hits, 1);
    }

    #[test]
    fn mixture_monotonicity_between_top_and_bottom() {
        let oracle = eu_oracle(&[("a", "0"), ("c", "w^2")]);
        let top = Lottery::point("c");
        let bottom = Lottery::point("a");
        let grid = dyadic_grid(4);
        for (i, low) in grid.iter().enumerate() {
            for high in &grid[i + 1..] {
                let worse = Lottery::mix(low, &top, &bottom).unwrap();
                let better = Lottery::mix(high, &top, &bottom).unwrap();
                assert_eq!(oracle.prefer(&better, &worse), Some(Preference::Succ));
            }
        }
    }

    #[test]
    fn linearity_verifies_on_dyadic_mixes() {
        let oracle = eu_oracle(&[("a", "0"), ("b", "3/4"), ("c", "1")]);
        let sample = points(&["a", "b", "c"]);
        let candidates = dyadic_grid(6);
        let assignment = construct_utility(&oracle, &sample, &candidates).unwrap();
        let mixes = vec![
            (s("1"), Lottery::point("b"), Lottery::point("a")),
            (s("1/2"), Lottery::point("c"), Lottery::point("a")),
            (s("1/4"), Lottery::point("c"), Lottery::point("b")),
        ];
        let report = verify_linearity(&assignment, &oracle, &mixes, &candidates);
        assert!(report.passed(), "{report:?}");
        // a = 1 reproduces U(p) on both sides
        assert_eq!(report.checks[0].rederived, Some(s("3/4")));
        assert_eq!(report.checks[0].combined, Some(s("3/4")));
    }

    #[test]
    fn default_candidates_cover_documented_shapes() {
        let candidates = default_lambda_candidates();
        for needle in ["1/2", "1023/1024", "w^-1", "1/8*w^-2", "1/2*w^-1 + 1/4*w^-3"] {
            assert!(
                candidates.contains(&s(needle)),
                "missing {needle} in default candidates"
            );
        }
    }
}
