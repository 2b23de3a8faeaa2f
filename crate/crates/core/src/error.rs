use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("the zero polynomial has no roots to isolate")]
    ZeroPolynomial,

    #[error("invalid arithmetic function: {0}")]
    InvalidSpec(String),

    #[error("arithmetic functions are evaluated for n >= 1 only")]
    ZeroArgument,

    #[error("member {requested} is outside the computed range 0..={available}")]
    OutOfRange { requested: usize, available: usize },

    #[error("evaluation point must be nonzero ({0})")]
    ZeroPoint(&'static str),

    #[error("width must be positive")]
    NonPositiveWidth,

    #[error("root iteration did not converge after {iterations} iterations (best max |root| = {best})")]
    NoConvergence { iterations: usize, best: f64 },

    #[error("probe generated outside the theorem hypothesis: {0}")]
    ProbeHypothesis(String),

    #[error("theorem hypothesis cannot be met: {0}")]
    HypothesisUnsatisfiable(String),

    #[error("five-term recursion disagrees with the defining recursion at n = {0}")]
    RecursionMismatch(usize),

    #[error("division by zero while forming {0}")]
    ZeroDivisor(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache format error: {0}")]
    Cache(String),

    #[error("extended rows requested without enabling extended mode: {0}")]
    ExtendedRequired(String),
}
