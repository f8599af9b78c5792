use num_bigint::BigInt;

use crate::Rational;

/// Errors raised by the series engine, the expression language and the
/// check registry.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("exponent {exponent} is not a multiple of 1/{scale}")]
    Scale { exponent: Rational, scale: i64 },

    #[error("series has no known lowest term inside its window")]
    EmptyWindow,

    #[error("leading coefficient {0} is not a unit")]
    NonUnitLead(BigInt),

    #[error(
        "insufficient order: need exponents below {needed}, series valid only below {available}"
    )]
    InsufficientOrder {
        needed: Rational,
        available: Rational,
    },

    #[error("divergent product: {0}")]
    DivergentProduct(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("truncation unbounded: {0}")]
    TruncationUnbounded(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("unknown check id `{0}`")]
    UnknownId(String),

    #[error("while evaluating `{expr}`: {source}")]
    Eval {
        expr: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// The innermost engine error, looking through evaluation context.
    pub fn root(&self) -> &Error {
        match self {
            Error::Eval { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
