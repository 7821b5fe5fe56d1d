use thiserror::Error;

use crate::series::Caps;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation caps differ: {left:?} vs {right:?}")]
    CapMismatch { left: Caps, right: Caps },

    #[error("geometric series of the constant monomial is undefined")]
    ZeroMonomial,

    #[error("twist exponent {value} for composition {parts:?} is not a nonnegative integer")]
    NonIntegerExponent { parts: Vec<u32>, value: String },

    #[error("rank {rank} and degree {degree} are not coprime")]
    NonCoprime { rank: u32, degree: i64 },

    #[error("genus {0} is too small; need g >= 2")]
    GenusTooSmall(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Hodge symmetry fails at (p, q) = ({p}, {q})")]
    SymmetryViolation { p: usize, q: usize },

    #[error("Serre duality fails at (p, q) = ({p}, {q})")]
    DualityViolation { p: usize, q: usize },

    #[error("invalid Hodge diamond: {0}")]
    InvalidDiamond(String),

    #[error("complete intersection not supported: {0}")]
    UnsupportedDimension(String),

    #[error("index j = {j} out of range for rank {rank}")]
    BadIndex { rank: u32, j: u32 },

    #[error("a = {a} must be at least 2 and divide r = {rank}")]
    BadGcd { rank: u32, a: u32 },

    #[error("slope condition re + n > rn(2g - 2) fails for n={n}, e={e}, r={r}, g={g}")]
    SlopeConditionViolated { n: u32, e: i64, r: u32, g: u32 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("linear solve failed: {0}")]
    SolveFailure(String),

    #[error("assertion failed: {0}")]
    AssertionFailure(String),
}

impl Error {
    /// True for errors caused by bad input, as opposed to failed internal checks.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NonCoprime { .. }
                | Error::GenusTooSmall(_)
                | Error::InvalidParameter(_)
                | Error::BadIndex { .. }
                | Error::BadGcd { .. }
                | Error::SlopeConditionViolated { .. }
                | Error::UnsupportedDimension(_)
                | Error::ZeroMonomial
        )
    }
}
