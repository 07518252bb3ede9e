use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A computation would need more ℓ-adic digits than the ring carries.
    PrecisionExhausted,
    UnsupportedConfig(String),
    InvalidSymbol(String),
    NotAnOrder,
    /// An identity that the theory guarantees did not hold. Always a bug.
    AssertionFailure(String),
    NotSelfDual,
    MaxRmRequired,
    AlreadyMaxRm,
    NoAscendingNeighbor,
    NoFrobeniusConfigured,
    NotIsotropic,
    NoDecreasingNeighbor,
    InvalidParams(String),
    ValidationFailed(String),
    InputShapeMismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PrecisionExhausted => write!(f, "working precision exhausted"),
            Error::UnsupportedConfig(m) => write!(f, "unsupported configuration: {m}"),
            Error::InvalidSymbol(m) => write!(f, "invalid splitting symbol: {m}"),
            Error::NotAnOrder => write!(f, "lattice is not an order"),
            Error::AssertionFailure(m) => write!(f, "internal consistency check failed: {m}"),
            Error::NotSelfDual => write!(f, "lattice is not self-dual for the form"),
            Error::MaxRmRequired => write!(f, "lattice does not have maximal real multiplication"),
            Error::AlreadyMaxRm => write!(f, "lattice already has maximal real multiplication"),
            Error::NoAscendingNeighbor => write!(f, "prime does not divide the conductor"),
            Error::NoFrobeniusConfigured => write!(f, "algebra has no Frobenius element"),
            Error::NotIsotropic => write!(f, "subspace is not isotropic"),
            Error::NoDecreasingNeighbor => write!(f, "no neighbor decreases the obstruction"),
            Error::InvalidParams(m) => write!(f, "invalid parameters: {m}"),
            Error::ValidationFailed(m) => write!(f, "validation failed: {m}"),
            Error::InputShapeMismatch(m) => write!(f, "input graph has the wrong shape: {m}"),
        }
    }
}

impl core::error::Error for Error {}
