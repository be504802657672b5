use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("polynomial is not bihomogeneous: terms `{first}` and `{second}` differ in bidegree")]
    NotBihomogeneous { first: String, second: String },
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("exponent overflow (exponents are limited to 255)")]
    ExponentOverflow,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("computation budget exceeded after {steps} steps")]
    BudgetExceeded { steps: u64 },
    #[error("degree bound {bound} too small: {what}")]
    BoundExceeded { bound: u32, what: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("retry budget of {0} attempts exhausted")]
    RetriesExhausted(u32),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
