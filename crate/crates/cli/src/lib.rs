//! Library half of the `surreal` command-line tool: the expression
//! evaluator, the decision-problem and preference file formats, and the
//! command implementations the binary dispatches to.

pub mod commands;
pub mod expr;
pub mod problem_file;
pub mod vnm_file;

pub use commands::{CliError, CommandOutput, GlobalOptions};
