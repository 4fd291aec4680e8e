//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in exact computations.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Inversion or division by the zero element.
    DivisionByZero,
    /// Two scalars from different cyclotomic fields were combined.
    ContextMismatch { left: u64, right: u64 },
    /// ε-valuation of the zero rational function was requested.
    ZeroValuation,
    /// Evaluation at ε = 0 hit a pole; the limit does not exist coefficientwise.
    PoleAtZero,
    /// Variable counts of two polynomials (or a substitution matrix) disagree.
    ArityMismatch { expected: usize, got: usize },
    /// Catalecticant or annihilator order outside 0..=d.
    OrderOutOfRange { order: usize, degree: u32 },
    /// An operation that requires a nonzero polynomial received zero.
    ZeroInput,
    /// Members passed to a local-decomposition operation do not share the base.
    NotLocal,
    /// Some coefficient of the expanded decomposition has a pole at ε = 0.
    LimitDoesNotExist,
    /// Generalized additive extraction needs d ≥ r − 1.
    DegreeTooLow { degree: u32, rank: usize },
    /// A surviving local class has negative valuation; impossible when d ≥ r − 1.
    CrossClassCancellation,
    /// A class limit is not divisible by the expected power of its base.
    LocalStructureViolation,
    /// Proportional linear forms where pairwise non-proportional ones are required.
    ProportionalForms,
    /// Internal re-verification of a synthesized decomposition failed.
    SynthesisError(String),
    /// Unknown normal-form family tag or a degree too small for the family.
    InvalidFamily,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ContextMismatch { left, right } => {
                write!(f, "context mismatch: zeta({left}) vs zeta({right})")
            }
            Error::ZeroValuation => write!(f, "valuation of zero is undefined"),
            Error::PoleAtZero => write!(f, "pole at epsilon = 0"),
            Error::ArityMismatch { expected, got } => {
                write!(
                    f,
                    "arity mismatch: expected {expected} variables, got {got}"
                )
            }
            Error::OrderOutOfRange { order, degree } => {
                write!(f, "order {order} out of range for degree {degree}")
            }
            Error::ZeroInput => write!(f, "zero polynomial not allowed here"),
            Error::NotLocal => write!(f, "summands do not share the projective limit"),
            Error::LimitDoesNotExist => write!(f, "limit does not exist at epsilon = 0"),
            Error::DegreeTooLow { degree, rank } => {
                write!(
                    f,
                    "degree too low: d = {degree} < r - 1 = {}",
                    rank.saturating_sub(1)
                )
            }
            Error::CrossClassCancellation => {
                write!(
                    f,
                    "cross-class cancellation: a class has negative valuation"
                )
            }
            Error::LocalStructureViolation => {
                write!(
                    f,
                    "class limit is not a multiple of the expected base power"
                )
            }
            Error::ProportionalForms => write!(f, "linear forms must be pairwise non-proportional"),
            Error::SynthesisError(why) => write!(f, "synthesis re-verification failed: {why}"),
            Error::InvalidFamily => write!(f, "invalid normal-form family or degree"),
        }
    }
}

impl core::error::Error for Error {}
