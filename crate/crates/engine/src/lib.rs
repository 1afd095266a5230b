//! Decision machinery over exact surreal values: finitely-additive
//! (possibly non-Archimedean) credences, expected-utility evaluation with
//! ranking, statewise dominance and mixed-strategy sweeps, an executable
//! expected-utility representation (axiom checks plus utility
//! construction), and a catalog of worked fixtures with exact expected
//! values.
//!
//! Batch entry points ([`decision::DecisionProblem::pure_beats_mixtures`],
//! [`cases::run_all`]) evaluate their independent items in parallel via
//! rayon when the default `parallel` feature is enabled, and sequentially
//! otherwise; results are identical either way.

pub mod cases;
pub mod decision;
pub mod probability;
pub mod vnm;

pub use cases::{builtin_cases, find_case, perturbed, run_all, run_by_name, run_case, CaseFixture, CaseReport, CasesError};
pub use decision::{
    DecisionError, DecisionProblem, DominanceDetail, DominanceVerdict, Mixture, MixtureSweep,
    Ranking,
};
pub use probability::{Credence, NapReport, NapStatus, ProbabilityError, StateSpace};
pub use vnm::{
    check_axioms, construct_utility, default_lambda_candidates, verify_linearity, AxiomReport,
    AxiomStatus, EuOracle, Lottery, Preference, PreferenceOracle, TableOracle, UtilityAssignment,
    VnmError,
};
