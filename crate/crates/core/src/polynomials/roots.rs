//! Exhaustive search for roots in `Q(i)`.
//!
//! After scaling to Gaussian-integer coefficients, a root `p/q` in lowest
//! terms has `p | a_0` and `q | a_n` in `Z[i]`. Both divisor sets are
//! enumerated from the Gaussian prime factorisations of the two
//! coefficients, which in turn come from factoring their integer norms.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{root_multiplicity, Polynomial, Root};
use crate::error::{Error, Result};
use crate::scalars::ExactScalar;

const TRIAL_LIMIT: u64 = 1 << 20;
const RHO_ITERATIONS: usize = 1 << 20;
const MAX_DIVISORS: usize = 20_000;
const MAX_CANDIDATES: usize = 4_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    fn one() -> Self {
        GaussInt::new(BigInt::one(), BigInt::zero())
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn div_exact(&self, o: &GaussInt) -> Option<GaussInt> {
        let n = o.norm();
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        if (&re % &n).is_zero() && (&im % &n).is_zero() {
            Some(GaussInt::new(re / &n, im / n))
        } else {
            None
        }
    }

    fn to_scalar(&self) -> ExactScalar {
        ExactScalar::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent rho; returns a nontrivial factor of the composite `n`.
fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    for c in 1u32..20 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        let mut steps = 0;
        while d.is_one() && steps < RHO_ITERATIONS {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            steps += 1;
        }
        if !d.is_one() && d != *n {
            return Some(d);
        }
    }
    None
}

fn push_factor(out: &mut Vec<(BigInt, u32)>, p: BigInt) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    }
}

fn factor_large(n: BigInt, out: &mut Vec<(BigInt, u32)>) -> Option<()> {
    if n.is_one() {
        return Some(());
    }
    if is_probable_prime(&n) {
        push_factor(out, n);
        return Some(());
    }
    let f = pollard_rho(&n)?;
    let g = &n / &f;
    factor_large(f, out)?;
    factor_large(g, out)
}

/// Factorisation of a positive integer into `(prime, exponent)` pairs.
fn factor_integer(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            push_factor(&mut out, bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_large(rest, &mut out)?;
    out.sort();
    Some(out)
}

/// `(x, y)` with `x^2 + y^2 = p` for a prime `p = 1 mod 4`.
fn two_squares(p: &BigInt) -> (BigInt, BigInt) {
    let exp = (p - 1u32) / 4u32;
    let minus_one = p - 1u32;
    let mut c = BigInt::from(2);
    let t = loop {
        let t = c.modpow(&exp, p);
        if (&t * &t) % p == minus_one {
            break t;
        }
        c += 1u32;
    };
    let (mut a, mut b) = (p.clone(), t);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let y = (p - &b * &b).sqrt();
    (b, y)
}

fn gaussian_factors(a: &GaussInt) -> Option<Vec<(GaussInt, u32)>> {
    let mut primes: Vec<GaussInt> = Vec::new();
    for (q, _) in factor_integer(&a.norm())? {
        let r = (&q % 4u32).to_u32().unwrap_or(0);
        if q == BigInt::from(2) {
            primes.push(GaussInt::new(BigInt::one(), BigInt::one()));
        } else if r == 3 {
            primes.push(GaussInt::new(q, BigInt::zero()));
        } else {
            let (x, y) = two_squares(&q);
            primes.push(GaussInt::new(x.clone(), y.clone()));
            primes.push(GaussInt::new(x, -y));
        }
    }
    let mut out = Vec::new();
    let mut rest = a.clone();
    for pi in primes {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&pi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pi, e));
        }
    }
    Some(out)
}

/// Divisors of `a` up to multiplication by units.
fn divisors(a: &GaussInt) -> Option<Vec<GaussInt>> {
    let mut out = vec![GaussInt::one()];
    for (pi, e) in gaussian_factors(a)? {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = cur.mul(&pi);
                next.push(cur.clone());
            }
        }
        if next.len() > MAX_DIVISORS {
            return None;
        }
        out = next;
    }
    Some(out)
}

#[derive(Clone, Copy)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn mul(self, o: C64) -> C64 {
        C64 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn to_c64(s: &ExactScalar) -> C64 {
    C64 { re: s.re().to_f64().unwrap_or(f64::NAN), im: s.im().to_f64().unwrap_or(f64::NAN) }
}

/// Cheap floating-point rejection; `true` means "possibly a root".
fn maybe_root(coeffs: &[C64], z: C64) -> bool {
    let az = z.abs();
    let mut acc = C64 { re: 0.0, im: 0.0 };
    let mut scale = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(*c);
        scale = scale * az + c.abs();
    }
    let (v, s) = (acc.abs(), scale);
    !(v.is_finite() && s.is_finite()) || v <= 1e-6 * s
}

fn gaussian_integer_coefficients(p: &Polynomial) -> Vec<GaussInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.re().denom()).lcm(c.im().denom());
    }
    let ints: Vec<GaussInt> = p
        .coeffs()
        .iter()
        .map(|c| GaussInt::new((c.re() * &l).to_integer(), (c.im() * &l).to_integer()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(&c.re).gcd(&c.im));
    ints.into_iter().map(|c| GaussInt::new(c.re / &g, c.im / &g)).collect()
}

/// Complete factorisation of `p` into linear factors over `Q(i)`.
///
/// Returns the distinct roots with multiplicities, sorted, or
/// `RootsDontSplit` if some factor has no root in `Q(i)` (or the bounded
/// search could not decide).
pub fn split_roots(p: &Polynomial) -> Result<Vec<Root>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut roots = Vec::new();
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(Root { gamma: ExactScalar::zero(), t: zeros });
    }
    let mut rest = Polynomial::new(p.coeffs()[zeros..].to_vec()).monic()?;
    if deg == zeros {
        return Ok(roots);
    }
    let ints = gaussian_integer_coefficients(&rest);
    let exhausted = || Error::RootsDontSplit("root search bound exceeded".into());
    let num_divs = divisors(&ints[0]).ok_or_else(exhausted)?;
    let den_divs = divisors(ints.last().expect("nonconstant")).ok_or_else(exhausted)?;
    if num_divs.len() * den_divs.len() * 4 > MAX_CANDIDATES {
        return Err(exhausted());
    }
    let float_coeffs: Vec<C64> = ints.iter().map(|c| to_c64(&c.to_scalar())).collect();
    let units = [ExactScalar::one(), ExactScalar::i(), -ExactScalar::one(), -ExactScalar::i()];
    let mut seen = HashSet::new();
    'search: for d in &den_divs {
        let inv_d = d.to_scalar().invert()?;
        for n in &num_divs {
            let base = &n.to_scalar() * &inv_d;
            for u in &units {
                let cand = &base * u;
                if !maybe_root(&float_coeffs, to_c64(&cand)) || !seen.insert(cand.clone()) {
                    continue;
                }
                if !rest.eval(&cand).is_zero() {
                    continue;
                }
                let t = root_multiplicity(&rest, &cand)?;
                let factor = Polynomial::linear(&cand).pow(t);
                rest = rest.exact_div(&factor)?.expect("root factor divides");
                roots.push(Root { gamma: cand, t });
                if rest.degree() == Some(0) {
                    break 'search;
                }
            }
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::RootsDontSplit(format!("irreducible factor {rest}")));
    }
    roots.sort_by(|a, b| a.gamma.cmp(&b.gamma));
    Ok(roots)
}
