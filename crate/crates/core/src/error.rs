use thiserror::Error;

/// Domain errors raised by the library.
///
/// Each variant corresponds to a precondition failure of one operation; the
/// CLI reports [`Error::name`] on standard error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("root {0} occurs more than once")]
    DuplicateRoot(String),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("the denominator vanishes at {0}")]
    PoleAtNode(String),
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("characteristic polynomial does not split over Q(i): {0}")]
    RootsDontSplit(String),
    #[error("supplied roots do not expand to the characteristic polynomial")]
    RootMismatch,
    #[error("denominator is not a constant times the product of (1 - gamma z)^t")]
    DenominatorMismatch,
    #[error("numerator degree must be below denominator degree")]
    DegreeTooLarge,
    #[error("Q * R does not equal the characteristic polynomial")]
    FactorizationMismatch,
    #[error("exact Taylor data is only available at z0 = 0")]
    NonzeroShiftUnsupported,
    #[error("the exponential polynomial is identically zero")]
    IdenticallyZero,
    #[error("node {0} lies on the contour")]
    NodeOnContour(String),
    #[error("point {0} lies outside the contour")]
    PointOutsideContour(String),
    #[error("the function has a pole on or inside the contour")]
    PoleInsideContour,
    #[error("some alpha_i is zero")]
    ZeroAlpha,
    #[error("the two twists must be distinct")]
    EqualTwists,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable variant name, used as the machine-readable error code.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroInverse => "ZeroInverse",
            Error::DuplicateRoot(_) => "DuplicateRoot",
            Error::BothZero => "BothZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::PoleAtNode(_) => "PoleAtNode",
            Error::InvalidRecurrence(_) => "InvalidRecurrence",
            Error::RootsDontSplit(_) => "RootsDontSplit",
            Error::RootMismatch => "RootMismatch",
            Error::DenominatorMismatch => "DenominatorMismatch",
            Error::DegreeTooLarge => "DegreeTooLarge",
            Error::FactorizationMismatch => "FactorizationMismatch",
            Error::NonzeroShiftUnsupported => "NonzeroShiftUnsupported",
            Error::IdenticallyZero => "IdenticallyZero",
            Error::NodeOnContour(_) => "NodeOnContour",
            Error::PointOutsideContour(_) => "PointOutsideContour",
            Error::PoleInsideContour => "PoleInsideContour",
            Error::ZeroAlpha => "ZeroAlpha",
            Error::EqualTwists => "EqualTwists",
            Error::SingularMatrix => "SingularMatrix",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
