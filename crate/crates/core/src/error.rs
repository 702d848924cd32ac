use alloc::string::String;
use core::fmt;

/// Errors surfaced by the engine. Mathematical check failures are not errors;
/// they are reported as failing axioms with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Scalar arithmetic problem (zero division, incompatible orders, parse).
    Scalar(String),
    /// Dimension or shape mismatch between maps and spaces.
    Shape(String),
    /// Invalid input data (gradings, brackets, group elements, config values).
    Invalid(String),
    /// A precondition of an operation failed (e.g. QYBE does not hold).
    Precondition(String),
    /// The truncated ideal did not stabilize at the requested buffer.
    Stabilization(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Scalar(m) => write!(f, "scalar error: {m}"),
            Error::Shape(m) => write!(f, "shape mismatch: {m}"),
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::Stabilization(m) => write!(f, "stabilization failure: {m}"),
        }
    }
}

impl core::error::Error for Error {}
