use thiserror::Error;

/// Errors raised by the algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid manifold parameter: {0}")]
    InvalidPreset(String),
    #[error("class {0} does not belong to the active manifold")]
    PresetMismatch(String),
    #[error("all retained terms lie below the energy floor; valuation unknown")]
    ValBelowFloor,
    #[error("truncation can affect the requested pairing coefficient")]
    TruncationUnsound,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("energy or series floor too shallow: {0}")]
    FloorTooShallow(String),
    #[error("residue factors are not coprime")]
    NotCoprime,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("polynomial coefficients are not integral (positive degree present)")]
    NotIntegral,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("element vanishes in field component {0}")]
    ZeroInComponent(usize),
    #[error("pairing vanishes")]
    PairingVanishes,
    #[error("slope did not stabilize within {0} terms")]
    SlopeNotStabilized(usize),
    #[error("exponent {0} is not integral along e1")]
    FractionalExponent(String),
    #[error("product table is inconsistent: {0}")]
    TableInconsistent(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("factorization undecided: {0}")]
    Undecided(String),
}

pub type Result<T> = std::result::Result<T, Error>;
