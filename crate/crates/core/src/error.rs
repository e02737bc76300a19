use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("expected a grade-{expected} element, found grade {found}")]
    WrongGrade { expected: usize, found: usize },
    #[error("not a versor: g*alpha(g) = {0}")]
    NotAVersor(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("group element is not in the open Gelfand-Naimark cell")]
    NotInDenseCell,
    #[error("factorization needs sqrt({0}) which is not in the working field")]
    FieldExtensionRequired(String),
    #[error("conformal action undefined at {0}: the point is sent to infinity")]
    ActionUndefined(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("mixed-parity Riesz exponents: {0}")]
    MixedParity(String),
    #[error("Gamma pole too close: {0}")]
    PoleProximity(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
