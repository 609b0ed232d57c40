use thiserror::Error;

use crate::field::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("variable namespace mismatch")]
    NamespaceMismatch,
    #[error("{0} is not a valid prime modulus (must be prime and below 2^31)")]
    InvalidPrime(u64),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix shape mismatch: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("substitution images are not homogeneous of a common degree")]
    NonHomogeneousImages,
    #[error("division by the zero polynomial")]
    DivisorZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("total degree {0} exceeds the cap of {cap}", cap = crate::monomial::MAX_DEGREE)]
    DegreeOverflow(u32),
    #[error("degenerate tensor: {0}")]
    DegenerateTensor(String),
    #[error("map is not birational: {0}")]
    NotBirational(String),
    #[error("degree {0} outside the supported range 1..=10")]
    DegreeCapExceeded(usize),
    #[error("Hilbert function is not eventually linear: values {0:?}")]
    NotEventuallyLinear([usize; 3]),
    #[error("prime {0} exceeds the enumeration budget (p <= 101)")]
    PrimeTooLarge(u64),
    #[error("prime {0} not allowed here (smoothness scan needs p odd)")]
    BadPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no generic tensor found after {attempts} attempts; last gate failure: {last}")]
    GenericityExhausted { attempts: u32, last: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
