use alloc::string::String;
use core::fmt;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A documented precondition failed; the payload names the inequality.
    Precondition(String),
    /// A size guard was exceeded.
    CapExceeded { what: String, size: u128, cap: u128 },
    DivisionByZero,
    FieldMismatch,
    /// The supplied modulus is reducible over the prime field.
    Reducible(String),
    Unsupported(String),
    Shape(String),
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::CapExceeded { what, size, cap } => {
                write!(f, "size cap exceeded for {what}: {size} > {cap}")
            }
            Error::DivisionByZero => write!(f, "division by zero in field"),
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::Reducible(s) => write!(f, "modulus is reducible: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::Shape(s) => write!(f, "shape mismatch: {s}"),
            Error::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Returns `Err(Precondition)` carrying `what` unless `cond` holds.
pub(crate) fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(String::from(what)))
    }
}

pub(crate) fn check_cap(what: &str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what: String::from(what), size, cap })
    } else {
        Ok(())
    }
}
