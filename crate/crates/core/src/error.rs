use thiserror::Error;

use crate::rat::Rat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(Rat),
    #[error("interpolation points are inconsistent with degree bound {0}")]
    Inconsistent(usize),
    #[error("too few points ({got}) for degree bound {bound}")]
    TooFewPoints { got: usize, bound: usize },
    #[error("parameter difference {0} is not a nonnegative integer")]
    NotIntegerDifference(String),
    #[error("symbol {0} is not in the symbol table")]
    UnknownSymbol(String),
    #[error("symbol {0} is not bound")]
    Unbound(String),
    #[error("invalid binding for {symbol}: {reason}")]
    InvalidBinding { symbol: String, reason: String },
    #[error("no upper parameter is a nonpositive integer")]
    NoTermination,
    #[error("pole: lower parameter {index} vanishes at shift {shift}")]
    Pole { index: usize, shift: u64 },
    #[error("series is not balanced")]
    NotBalanced,
    #[error("no pairing of upper and lower parameters exists")]
    NoPairing,
    #[error("summand degree {degree} is not below termination order {n}")]
    DegreeTooHigh { degree: u64, n: u64 },
    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },
    #[error("undeclared symbol {name} at byte {offset}")]
    UndeclaredSymbol { name: String, offset: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("proof replay failed: {0}")]
    Replay(String),
}

impl Error {
    /// Stable identifier used in machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::NotDivisible => "NotDivisible",
            Error::DuplicateAbscissa(_) => "DuplicateAbscissa",
            Error::Inconsistent(_) => "Inconsistent",
            Error::TooFewPoints { .. } => "TooFewPoints",
            Error::NotIntegerDifference(_) => "NotIntegerDifference",
            Error::UnknownSymbol(_) => "UnknownSymbol",
            Error::Unbound(_) => "Unbound",
            Error::InvalidBinding { .. } => "InvalidBinding",
            Error::NoTermination => "NoTermination",
            Error::Pole { .. } => "PoleError",
            Error::NotBalanced => "NotBalanced",
            Error::NoPairing => "NoneExists",
            Error::DegreeTooHigh { .. } => "DegreeTooHigh",
            Error::Parse { .. } => "ParseError",
            Error::UndeclaredSymbol { .. } => "UndeclaredSymbol",
            Error::Precondition(_) => "Precondition",
            Error::Replay(_) => "ReplayFailure",
        }
    }
}
