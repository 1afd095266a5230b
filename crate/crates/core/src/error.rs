use thiserror::Error;

/// Errors raised by surreal construction, arithmetic, cuts, and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurrealError {
    /// An exponent tower grew past the configured nesting bound.
    #[error("exponent nesting depth {depth} exceeds bound {bound}")]
    DepthExceeded { depth: usize, bound: usize },

    #[error("division by zero")]
    ZeroDivision,

    /// Long division did not reach a zero remainder within the term budget.
    /// The exact quotient has infinite support in this representation.
    #[error("no exact quotient within {budget} terms (remainder still nonzero)")]
    ExactQuotientUnavailable { budget: usize },

    #[error("standard part is undefined for infinite values")]
    InfiniteArgument,

    #[error("malformed cut: left bound {left} does not lie below right bound {right}")]
    MalformedCut { left: String, right: String },

    #[error("cut bounds must be real-valued, got {bound}")]
    NonRealBound { bound: String },

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
}
