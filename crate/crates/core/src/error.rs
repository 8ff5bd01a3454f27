use thiserror::Error;

/// Errors raised by the engine. Verification failures that carry a witness
/// keep it as a printable string so reports can embed it verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("{0} is not a unit")]
    NonUnit(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("exponent {0} is not divisible by {1}")]
    NotDivisible(String, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed descriptor: {0}")]
    Malformed(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("structural endomorphisms do not commute: {0}")]
    NonCommutingSigmas(String),
    #[error("{0} is reducible")]
    Reducible(String),
    #[error("ideal is not maximal; witness {0}")]
    NotMaximal(String),
    #[error("enumeration bound exceeded: {0}")]
    TooLarge(String),
    #[error("quotient is infinite-dimensional along variable {0}")]
    InfiniteStaircase(String),
    #[error("ideal is the whole ring")]
    NotProper,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("descent failed: {0}")]
    DescentFailed(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
