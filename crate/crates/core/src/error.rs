use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is out of range (need 2 <= p < 65536)")]
    PrimeOutOfRange(u64),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable index {index} out of range (nvars = {nvars})")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("need at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("f is the zero polynomial")]
    ZeroPolynomial,
    #[error("f must lie in the maximal ideal (nonzero constant term)")]
    NotInMaximalIdeal,
    #[error("ring parameters differ: {0}")]
    MismatchedRings(String),
    #[error("capacity exceeded: ring dimension {needed} > limit {limit}")]
    CapacityExceeded { needed: String, limit: u64 },
    #[error("{0}")]
    OutOfRange(String),
    #[error("invalid monomial exponents: {0}")]
    InvalidMonomial(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("tables are not comparable: {0}")]
    IncompatibleTables(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::CapacityExceeded { .. })
    }
}
