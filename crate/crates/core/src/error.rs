use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside the domain where the quantity is defined.
    #[error("{name} = {value} is out of range: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("f({lo}) and f({hi}) have the same sign")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("no positive root found in (0, {scan_max}]")]
    NoRootFound { scan_max: f64 },

    #[error("iteration did not converge after {iterations} steps (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("enumeration of {requested} items exceeds the limit of {limit}")]
    SizeLimit { requested: u128, limit: u128 },

    #[error("table of {requested} entries exceeds the budget of {budget}")]
    MemoryBudget { requested: usize, budget: usize },

    #[error("invalid nucleotide {0:?}")]
    InvalidSymbol(char),

    #[error("strand must not be empty")]
    EmptyStrand,

    #[error("composition parts must be positive")]
    InvalidComposition,

    #[error("invalid curve specification: {0}")]
    InvalidSpec(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
