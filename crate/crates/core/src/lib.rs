//! Exact arithmetic toolkit for linear recurrence sequences over `Q(i)`.

pub mod closedforms;
pub mod error;
pub mod exppoly;
pub mod interpolation;
pub mod linalg;
pub mod nonhomogeneous;
pub mod polynomials;
pub mod recurrences;
pub mod scalars;
pub mod twisted;

pub use error::{Error, Result};
pub use polynomials::{Polynomial, RationalFunction, Root};
pub use recurrences::{LinearRecurrence, RecurrentSequence};
pub use scalars::{ApproxScalar, ExactScalar};
