use std::fmt;

use thiserror::Error;

/// A positioned syntax error from the text formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected ", self.line, self.column)?;
        match self.expected.as_slice() {
            [] => write!(f, "nothing")?,
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("state space too large: {count} profiles exceeds the cap of {cap}")]
    StateSpaceTooLarge { count: u128, cap: u64 },

    #[error("preference of player {0} is cyclic")]
    CyclicPreference(String),

    #[error("shape mismatch: profiles belong to different games")]
    ShapeMismatch,

    #[error("selection for player {0} is not a lazy successor")]
    NotLazySuccessor(String),

    #[error("operation requires payoff mode")]
    RequiresPayoffMode,

    #[error("parameters out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("row overflow at state {state}: outgoing mass exceeds 1")]
    RowOverflow { state: usize },

    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    #[error("preferences not strict-linear: player {0}")]
    NotStrictLinear(String),

    #[error("not a win-lose game: {0}")]
    NotWinLose(String),

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
