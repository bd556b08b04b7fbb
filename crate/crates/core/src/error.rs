use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u32),

    #[error("characteristic {p} does not exceed degree {degree}")]
    ModulusTooSmall { p: u32, degree: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("zero has no inverse modulo an irreducible modulus")]
    ZeroInverse,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("division by linear form is not exact; remainder {remainder}")]
    NotDivisible { remainder: String },

    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),

    #[error("row is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("positive-dimensional system ({context})")]
    PositiveDimensional { context: String },

    #[error("no separating linear form found after {attempts} attempts")]
    SeparationFailure { attempts: usize },

    #[error("block polynomial does not split over the prime field: {0}")]
    IrrationalRoot(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid problem instance: {0}")]
    InvalidInstance(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(message: impl Into<String>, line: usize, column: usize) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
