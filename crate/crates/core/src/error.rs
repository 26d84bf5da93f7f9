use alloc::string::String;
use core::fmt;

/// Errors raised by the exact and numeric engines.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument violated a documented precondition.
    InvalidInput(String),
    /// An exponent does not lie on the 1/80 grid used by the exact engine.
    OffGrid(String),
    /// Division by a series with no term below its truncation order.
    NotInvertible,
    /// A Hecke-type form does not grow on one of the summation cones.
    NonDivergentForm(String),
    /// A lattice sum, series or quadrature did not reach the requested tolerance.
    NonConvergence(String),
    /// Evaluation point too close to a pole or zero of a denominator.
    NearSingular(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::OffGrid(m) => write!(f, "exponent off the 1/80 grid: {m}"),
            Error::NotInvertible => write!(f, "series has no term below its order"),
            Error::NonDivergentForm(m) => write!(f, "quadratic form does not diverge: {m}"),
            Error::NonConvergence(m) => write!(f, "no convergence: {m}"),
            Error::NearSingular(m) => write!(f, "near-singular point: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidInput(alloc::format!($($arg)*)) };
}
pub(crate) use invalid;
