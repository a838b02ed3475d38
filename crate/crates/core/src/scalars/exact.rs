use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the Gaussian rationals `Q(i)`.
///
/// Both parts are kept in lowest terms with a positive denominator (this is
/// what [`BigRational`] maintains), so `==` is exact structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ExactScalar { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::real(BigRational::from_integer(n))
    }

    /// `num / den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `re + im*i` from integer parts.
    pub fn gaussian(re: i64, im: i64) -> Self {
        ExactScalar {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar { re: self.re.clone(), im: -&self.im }
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.norm();
        Ok(ExactScalar { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.invert()?)
    }

    /// Non-negative integer power by repeated squaring; `0^0 = 1`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.invert()?.pow(e.unsigned_abs()))
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        ExactScalar { re: &self.re * k, im: &self.im * k }
    }

    /// Canonical rational text `p/q`, used by the JSON encoding.
    pub fn rational_string(q: &BigRational) -> String {
        format!("{}/{}", q.numer(), q.denom())
    }

    /// Parses `p/q` or `p` into a rational.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("malformed rational '{s}'"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(p, q))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

/// Lexicographic on `(re, im)`. This is not a field ordering; it exists so
/// that sets of scalars have a canonical, deterministic order.
impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        Self::real(q)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = |q: &BigRational| -> String {
            if q.is_one() {
                "i".to_string()
            } else if *q == -BigRational::one() {
                "-i".to_string()
            } else {
                format!("{q}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", unit(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}", self.re, unit(&-&self.im))
                } else {
                    write!(f, "{}+{}", self.re, unit(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the text form produced by `Display`: `3/2`, `-i`, `1/2-3i`, `2i`.
impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(Self::parse_rational(&s)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => Self::parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re_part.is_empty() { BigRational::zero() } else { Self::parse_rational(re_part)? };
        Ok(ExactScalar { re, im })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                $imp(self, rhs)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $imp(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                $imp(&self, rhs)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $imp(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    ExactScalar { re: &a.re + &b.re, im: &a.im + &b.im }
}

fn sub_impl(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    ExactScalar { re: &a.re - &b.re, im: &a.im - &b.im }
}

fn mul_impl(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    if a.im.is_zero() && b.im.is_zero() {
        return ExactScalar::real(&a.re * &b.re);
    }
    ExactScalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

/// Panics on division by zero, like `BigRational`. Use
/// [`ExactScalar::checked_div`] when the divisor may vanish.
fn div_impl(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    a.checked_div(b).expect("division by zero")
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| acc * x)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExactScalar", 2)?;
        st.serialize_field("re", &Self::rational_string(&self.re))?;
        st.serialize_field("im", &Self::rational_string(&self.im))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Text(String),
    Int(i64),
}

impl RationalRepr {
    fn parse(self) -> Result<BigRational> {
        match self {
            RationalRepr::Text(s) => ExactScalar::parse_rational(&s),
            RationalRepr::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Parts {
        re: RationalRepr,
        #[serde(default)]
        im: Option<RationalRepr>,
    },
    Text(String),
    Int(i64),
}

/// Accepts the canonical `{"re": "p/q", "im": "p/q"}` object (with `im`
/// optional), a bare integer, or the text form understood by `FromStr`.
impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let parsed = match repr {
            ScalarRepr::Parts { re, im } => re.parse().and_then(|re| {
                let im = im.map(RationalRepr::parse).transpose()?.unwrap_or_default();
                Ok(ExactScalar { re, im })
            }),
            ScalarRepr::Text(s) => s.parse(),
            ScalarRepr::Int(n) => Ok(ExactScalar::from_int(n)),
        };
        parsed.map_err(de::Error::custom)
    }
}
