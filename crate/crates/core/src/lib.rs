//! Exact arithmetic on surreal numbers restricted to finite-support Conway
//! normal form: finite sums `sum_i r_i * w^(y_i)` with arbitrary-precision
//! rational coefficients `r_i` and strictly decreasing surreal exponents
//! `y_i` of the same shape.
//!
//! This subfield is closed under addition, negation, multiplication, and
//! comparison, contains every real, every `w`-monomial hierarchy level, and
//! their infinitesimal reciprocals, and has a canonical form, so equality
//! is structural and every operation is exact. Division is exact-or-error:
//! quotients whose normal form would need infinite support (such as
//! `1/(w+1)`) are reported as [`SurrealError::ExactQuotientUnavailable`]
//! rather than silently truncated.
//!
//! ```
//! use surreal_core::Surreal;
//!
//! let w: Surreal = "w".parse().unwrap();
//! assert_eq!(&w - &w, Surreal::zero());          // w - w = 0
//! let half_w: Surreal = "0.5*w".parse().unwrap();
//! assert!(half_w < w);                           // no absorption: p*w < w
//! assert!(&half_w + &"5000".parse().unwrap() > half_w);
//! ```

mod cut;
mod error;
pub mod par;
mod parse;
mod rational;
mod surreal;

pub use cut::simplest_between;
pub use error::SurrealError;
pub use parse::{parse, parse_rational, parse_with, ParseOptions};
pub use rational::Rational;
pub use surreal::{Classification, Division, Surreal, DEFAULT_DEPTH_BOUND, DEFAULT_TERM_BUDGET};
