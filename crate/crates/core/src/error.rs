use thiserror::Error;

use crate::exchange::ExchangeWitness;
use crate::monomial::Monomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monomial has {found} variables, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("an ideal needs at least one variable")]
    NoVariables,

    #[error("exponent arithmetic overflowed")]
    Overflow,

    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,

    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,

    #[error("ideal is not polymatroidal: {0}")]
    NotPolymatroidal(Box<ExchangeWitness>),

    #[error("degree {requested} exceeds the enumeration guard {limit}")]
    DegreeGuard { requested: u32, limit: u32 },

    #[error("expected an ideal in two variables, got {0}")]
    NotBivariate(usize),

    #[error("bivariate ideal is not m-primary in normalized form (a_m = {a_last}, b_0 = {b_first})")]
    NotNormalized { a_last: u32, b_first: u32 },

    #[error("invalid generator order: {0}")]
    InvalidOrder(String),

    #[error("generators of the smaller ideal are not generators of the larger one: {0} is missing")]
    NotNested(Monomial),

    #[error("invalid Veronese data: {0}")]
    InvalidVeronese(String),

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("exchange walk stalled at {0}")]
    WalkStalled(Monomial),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("search supports at most 64 variables, got {0}")]
    TooManyVariables(usize),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
