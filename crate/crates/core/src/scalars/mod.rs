//! Exact Gaussian-rational scalars and the approximate complex mode used by
//! the contour-integral check.

mod approx;
mod exact;

pub use approx::{approximate, ApproxScalar};
pub use exact::ExactScalar;

/// Invert an exact scalar; fails with `ZeroInverse` on zero.
pub fn invert(s: &ExactScalar) -> crate::Result<ExactScalar> {
    s.invert()
}
