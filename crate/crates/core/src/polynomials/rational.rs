use std::fmt;

use serde::{Deserialize, Serialize};

use super::{monic_gcd, series_div, Polynomial};
use crate::error::{Error, Result};
use crate::scalars::ExactScalar;

/// A quotient `num / den` of polynomials, kept reduced.
///
/// After construction `gcd(num, den)` is constant and the lowest-order
/// nonzero coefficient of `den` is 1 (so `den(0) = 1` whenever `den(0) != 0`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr")]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Deserialize)]
struct RationalRepr {
    num: Polynomial,
    den: Polynomial,
}

impl TryFrom<RationalRepr> for RationalFunction {
    type Error = Error;
    fn try_from(r: RationalRepr) -> Result<Self> {
        RationalFunction::new(r.num, r.den)
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (num, den) = if num.is_zero() {
            (num, Polynomial::one())
        } else {
            let g = monic_gcd(&num, &den)?;
            let num = num.exact_div(&g)?.expect("gcd divides numerator");
            let den = den.exact_div(&g)?.expect("gcd divides denominator");
            (num, den)
        };
        let low = den.coeffs().iter().find(|c| !c.is_zero()).expect("nonzero denominator").invert()?;
        Ok(RationalFunction { num: num.scale(&low), den: den.scale(&low) })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn eval(&self, z: &ExactScalar) -> Result<ExactScalar> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::PoleAtNode(z.to_string()));
        }
        Ok(&self.num.eval(z) / &d)
    }

    /// Power-series coefficients at 0; requires `den(0) != 0`.
    pub fn taylor_coefficients(&self, n: usize) -> Result<Vec<ExactScalar>> {
        series_div(&self.num, &self.den, n)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(&(&self.num * &other.den) - &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn reduces_common_factors() {
        // (z-1)(z-2) / ((z-1)(z+3))
        let rf = RationalFunction::new(p(&[2, -3, 1]), p(&[-3, 2, 1])).unwrap();
        // den normalised so den(0) = 1: (z+3)/3
        assert_eq!(rf.den(), &Polynomial::new(vec![ExactScalar::one(), ExactScalar::ratio(1, 3)]));
        assert_eq!(rf.num(), &Polynomial::new(vec![ExactScalar::ratio(-2, 3), ExactScalar::ratio(1, 3)]));
        assert_eq!(rf.eval(&ExactScalar::from_int(5)).unwrap(), ExactScalar::ratio(3, 8));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(p(&[1]), Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn difference_of_geometric_series() {
        let a = RationalFunction::new(p(&[1]), p(&[1, -2])).unwrap();
        let b = RationalFunction::new(p(&[1]), p(&[1, -1])).unwrap();
        let d = a.sub(&b).unwrap();
        assert_eq!(d.num(), &p(&[0, 1]));
        assert_eq!(d.den(), &p(&[1, -3, 2]));
    }
}
