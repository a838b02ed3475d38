use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{ApproxScalar, ExactScalar};

/// Dense univariate polynomial over `Q(i)`, coefficients in ascending degree.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has an empty coefficient list and `==` compares polynomials exactly.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "PolynomialRepr")]
pub struct Polynomial {
    coeffs: Vec<ExactScalar>,
}

#[derive(Deserialize)]
struct PolynomialRepr {
    coeffs: Vec<ExactScalar>,
}

impl From<PolynomialRepr> for Polynomial {
    fn from(r: PolynomialRepr) -> Self {
        Polynomial::new(r.coeffs)
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(ExactScalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `z`.
    pub fn x() -> Self {
        Self::monomial(ExactScalar::one(), 1)
    }

    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `z - root`.
    pub fn linear(root: &ExactScalar) -> Self {
        Self::new(vec![-root, ExactScalar::one()])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(ExactScalar::is_one)
    }

    pub fn eval(&self, z: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn eval_approx(&self, z: &ApproxScalar) -> ApproxScalar {
        let p = z.precision();
        let mut acc = ApproxScalar::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &ApproxScalar::from_exact(c, p);
        }
        acc
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_int(&BigInt::from(k)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?.invert()?;
        Ok(self.scale(&lead))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = divisor.coeffs[dd].invert()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![ExactScalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[k + i] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `self(z + c)`.
    pub fn shift(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        // Taylor shift by synthetic division, O(n^2) scalar operations.
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let t = c * &a[k + 1];
                a[k] += &t;
            }
        }
        Polynomial::new(a)
    }

    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_real() { c.to_string() } else { format!("({c})") };
            parts.push(match k {
                0 => coef,
                1 if c.is_one() => var.to_string(),
                1 => format!("{coef}*{var}"),
                _ if c.is_one() => format!("{var}^{k}"),
                _ => format!("{coef}*{var}^{k}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty("z"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty("z"))
    }
}

fn add_coeffs(a: &[ExactScalar], b: &[ExactScalar], negate_b: bool) -> Polynomial {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_default();
        let y = b.get(k).cloned().unwrap_or_default();
        out.push(if negate_b { x - y } else { x + y });
    }
    Polynomial::new(out)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// First `n` coefficients of the power series `num / den` at 0.
pub fn series_div(num: &Polynomial, den: &Polynomial, n: usize) -> Result<Vec<ExactScalar>> {
    let d0 = den.coeff(0);
    let inv = d0.invert().map_err(|_| Error::PoleAtNode("0".into()))?;
    let mut out: Vec<ExactScalar> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for (i, dc) in den.coeffs().iter().enumerate().skip(1).take(k) {
            acc -= &(dc * &out[k - i]);
        }
        out.push(&acc * &inv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn stripping_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]);
        assert_eq!(&a * &a, p(&[1, -2, 1]));
        assert_eq!(&(&a * &a) - &(&a * &a), Polynomial::zero());
        let (q, r) = p(&[-3, 7, -5, 1]).div_rem(&p(&[-3, 1])).unwrap();
        assert_eq!(q, p(&[1, -2, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert_eq!(r, p(&[2]));
        assert_eq!(p(&[1]).div_rem(&Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn shift_matches_compose() {
        let f = p(&[3, -1, 4, 1, -5]);
        let c = ExactScalar::gaussian(2, -1);
        let via_compose = f.compose(&Polynomial::new(vec![c.clone(), ExactScalar::one()]));
        assert_eq!(f.shift(&c), via_compose);
        assert_eq!(f.shift(&c).shift(&-&c), f);
    }

    #[test]
    fn series_of_geometric() {
        let s = series_div(&p(&[1]), &p(&[1, -1]), 4).unwrap();
        assert_eq!(s, vec![ExactScalar::one(); 4]);
        let fib = series_div(&p(&[0, 1]), &p(&[1, -1, -1]), 8).unwrap();
        let want: Vec<_> = [0, 1, 1, 2, 3, 5, 8, 13].iter().map(|&x| ExactScalar::from_int(x)).collect();
        assert_eq!(fib, want);
    }

    #[test]
    fn json_strips_trailing_zeros() {
        let q: Polynomial = serde_json::from_str(r#"{"coeffs":["1","0/1","0"]}"#).unwrap();
        assert_eq!(q, p(&[1]));
        let js = serde_json::to_string(&p(&[0, 2])).unwrap();
        assert_eq!(js, r#"{"coeffs":[{"re":"0/1","im":"0/1"},{"re":"2/1","im":"0/1"}]}"#);
    }
}
