use thiserror::Error;

/// Errors raised by the arithmetic kernels and the verification pipelines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("operands live on different curves")]
    CurveMismatch,
    #[error("invalid field specification `{0}`")]
    InvalidFieldSpec(String),
    #[error("defining polynomial {0:#x} is not irreducible over GF(2)")]
    NotIrreducible(u64),
    #[error("defining polynomial {0:#x} is irreducible but x is not primitive")]
    NotPrimitive(u64),
    #[error("cannot embed GF(2^{from}) into GF(2^{to})")]
    IncompatibleDegrees { from: u32, to: u32 },
    #[error("field GF(2^{0}) is too large for this operation")]
    FieldTooLarge(u32),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("divisor has nonzero degree {deficit}; candidate places are incomplete")]
    NonzeroDegree { deficit: i64 },
    #[error("local expansion precision bound {0} exceeded")]
    PrecisionExceeded(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("Hurwitz formula gives odd 2g-2 = {0}")]
    ParityViolation(i64),
    #[error("different exponent {0} is odd")]
    OddDifferent(i64),
    #[error("singularity is not ordinary: {0}")]
    NonOrdinary(String),
    #[error("group closure exceeded {0} elements")]
    ClosureBound(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("extension is not certified irreducible (no place with odd reduced pole order)")]
    NotCertified,
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
