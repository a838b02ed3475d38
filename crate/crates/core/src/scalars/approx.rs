use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;

use super::ExactScalar;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Converts an integer exactly: the mantissa gets as many words as needed.
fn bigint_to_float(n: &BigInt) -> BigFloat {
    let (sign, words) = n.to_u64_digits();
    if words.is_empty() {
        return BigFloat::from_word(0, 64);
    }
    let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
    let e = (words.len() * 64) as i32;
    BigFloat::from_words(&words, s, e)
}

fn rational_to_float(q: &BigRational, bits: usize) -> BigFloat {
    bigint_to_float(q.numer()).div(&bigint_to_float(q.denom()), bits, RM)
}

fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((m, _, s, e, _)) => {
            let top = *m.last().unwrap_or(&0) as f64 / 2f64.powi(64);
            let v = top * 2f64.powi(e);
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None => f64::NAN,
    }
}

/// A complex number with binary floating-point parts of configurable
/// mantissa precision. Operations between two values run at the larger of
/// the two precisions.
#[derive(Clone)]
pub struct ApproxScalar {
    re: BigFloat,
    im: BigFloat,
    precision: usize,
}

impl ApproxScalar {
    pub fn new(re: BigFloat, im: BigFloat, precision: usize) -> Self {
        ApproxScalar { re, im, precision }
    }

    pub fn zero(precision: usize) -> Self {
        let z = BigFloat::from_word(0, precision);
        ApproxScalar { re: z.clone(), im: z, precision }
    }

    pub fn from_exact(s: &ExactScalar, precision: usize) -> Self {
        ApproxScalar {
            re: rational_to_float(s.re(), precision),
            im: rational_to_float(s.im(), precision),
            precision,
        }
    }

    pub fn from_real(re: BigFloat, precision: usize) -> Self {
        ApproxScalar { re, im: BigFloat::from_word(0, precision), precision }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    /// Modulus `sqrt(re^2 + im^2)` as a real value.
    pub fn abs(&self) -> ApproxScalar {
        let p = self.precision;
        let sq = self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM);
        ApproxScalar::from_real(sq.sqrt(p, RM), p)
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().re_f64()
    }

    /// `e^{re} (cos im + i sin im)`.
    pub fn exp(&self) -> ApproxScalar {
        let p = self.precision;
        with_consts(|cc| {
            let r = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            ApproxScalar { re: r.mul(&c, p, RM), im: r.mul(&s, p, RM), precision: p }
        })
    }

    /// `cos(theta) + i sin(theta)` for a real angle.
    pub fn cis(theta: &BigFloat, precision: usize) -> ApproxScalar {
        with_consts(|cc| ApproxScalar {
            re: theta.cos(precision, RM, cc),
            im: theta.sin(precision, RM, cc),
            precision,
        })
    }

    pub fn pi(precision: usize) -> BigFloat {
        with_consts(|cc| cc.pi(precision, RM))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Decimal rendering of a real part, used for report output.
    pub fn decimal(x: &BigFloat) -> String {
        with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }
}

impl fmt::Debug for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e}, {:e}) @{}b", self.re_f64(), self.im_f64(), self.precision)
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Self::decimal(&self.re))?;
        if !self.im.is_zero() {
            write!(f, " + {}i", Self::decimal(&self.im))?;
        }
        Ok(())
    }
}

/// Rounds `s` to `bits` of mantissa precision per part.
///
/// Each part is correctly rounded, so the error is at most
/// `2^(1-bits) * (1 + |s|)`. Panics if `bits < 24`.
pub fn approximate(s: &ExactScalar, bits: usize) -> ApproxScalar {
    assert!(bits >= 24, "approximate needs at least 24 bits of precision");
    ApproxScalar::from_exact(s, bits)
}

impl<'a> Add<&'a ApproxScalar> for &'a ApproxScalar {
    type Output = ApproxScalar;
    fn add(self, rhs: &'a ApproxScalar) -> ApproxScalar {
        let p = self.precision.max(rhs.precision);
        ApproxScalar { re: self.re.add(&rhs.re, p, RM), im: self.im.add(&rhs.im, p, RM), precision: p }
    }
}

impl<'a> Sub<&'a ApproxScalar> for &'a ApproxScalar {
    type Output = ApproxScalar;
    fn sub(self, rhs: &'a ApproxScalar) -> ApproxScalar {
        let p = self.precision.max(rhs.precision);
        ApproxScalar { re: self.re.sub(&rhs.re, p, RM), im: self.im.sub(&rhs.im, p, RM), precision: p }
    }
}

impl<'a> Mul<&'a ApproxScalar> for &'a ApproxScalar {
    type Output = ApproxScalar;
    fn mul(self, rhs: &'a ApproxScalar) -> ApproxScalar {
        let p = self.precision.max(rhs.precision);
        let re = self.re.mul(&rhs.re, p, RM).sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.re.mul(&rhs.im, p, RM).add(&self.im.mul(&rhs.re, p, RM), p, RM);
        ApproxScalar { re, im, precision: p }
    }
}

impl<'a> Div<&'a ApproxScalar> for &'a ApproxScalar {
    type Output = ApproxScalar;
    fn div(self, rhs: &'a ApproxScalar) -> ApproxScalar {
        let p = self.precision.max(rhs.precision);
        let den = rhs.re.mul(&rhs.re, p, RM).add(&rhs.im.mul(&rhs.im, p, RM), p, RM);
        let re = self.re.mul(&rhs.re, p, RM).add(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.im.mul(&rhs.re, p, RM).sub(&self.re.mul(&rhs.im, p, RM), p, RM);
        ApproxScalar { re: re.div(&den, p, RM), im: im.div(&den, p, RM), precision: p }
    }
}

impl Neg for &ApproxScalar {
    type Output = ApproxScalar;
    fn neg(self) -> ApproxScalar {
        ApproxScalar { re: self.re.clone().neg(), im: self.im.clone().neg(), precision: self.precision }
    }
}
