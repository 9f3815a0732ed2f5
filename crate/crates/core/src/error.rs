//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Rank outside the supported range `2..=8`.
    InvalidRank(u32),
    /// Malformed word text or an out-of-alphabet symbol.
    Parse(String),
    /// Operands built over different alphabets.
    AlphabetMismatch { expected: u32, found: u32 },
    /// Arguments outside an operation's domain (non-coprime pair, bad traces, ...).
    Domain(String),
    /// Trace of absolute value at most 2: no translation length exists.
    NotHyperbolic { trace_abs: f64 },
    /// A count table does not cover the requested length.
    Coverage { needed: u32, max_len: u32 },
    /// Not enough usable data points for a fit.
    TooFewPoints { have: usize, need: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRank(r) => write!(f, "rank {r} not supported (need 2..=8)"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::AlphabetMismatch { expected, found } => {
                write!(
                    f,
                    "alphabet mismatch: rank {found} where rank {expected} expected"
                )
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NotHyperbolic { trace_abs } => {
                write!(f, "element is not hyperbolic (|trace| = {trace_abs} <= 2)")
            }
            Error::Coverage { needed, max_len } => {
                write!(
                    f,
                    "count table covers lengths up to {max_len}, need {needed}"
                )
            }
            Error::TooFewPoints { have, need } => {
                write!(f, "fit needs at least {need} points, have {have}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
