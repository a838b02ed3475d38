//! Polynomial and rational-function algebra over `Q(i)`.

mod polynomial;
mod rational;
mod roots;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use polynomial::{series_div, Polynomial};
pub use rational::RationalFunction;
pub use roots::split_roots;

use crate::error::{Error, Result};
use crate::scalars::ExactScalar;

/// A root `gamma` together with its multiplicity `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub gamma: ExactScalar,
    pub t: usize,
}

impl Root {
    pub fn new(gamma: ExactScalar, t: usize) -> Self {
        Root { gamma, t }
    }
}

pub(crate) fn check_distinct<'a>(gammas: impl IntoIterator<Item = &'a ExactScalar>) -> Result<()> {
    let mut seen = HashSet::new();
    for g in gammas {
        if !seen.insert(g) {
            return Err(Error::DuplicateRoot(g.to_string()));
        }
    }
    Ok(())
}

/// `prod_j (T - gamma_j)^{t_j}`.
pub fn expand_root_factors(roots: &[Root]) -> Result<Polynomial> {
    check_distinct(roots.iter().map(|r| &r.gamma))?;
    Ok(roots
        .iter()
        .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear(&r.gamma).pow(r.t)))
}

/// Monic greatest common divisor by the Euclidean algorithm.
pub fn monic_gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        // Keep remainders monic to slow coefficient growth.
        a = b;
        b = if r.is_zero() { r } else { r.monic()? };
    }
    a.monic()
}

/// Largest `t` with `(T - gamma)^t | p`.
pub fn root_multiplicity(p: &Polynomial, gamma: &ExactScalar) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lin = Polynomial::linear(gamma);
    let mut cur = p.clone();
    let mut t = 0;
    while let Some(q) = cur.exact_div(&lin)? {
        cur = q;
        t += 1;
    }
    Ok(t)
}

/// The unique polynomial of degree `< t` agreeing with `g` to order `t` at
/// `z0`, i.e. the Taylor polynomial of `g` at `z0`.
pub fn taylor_truncate(g: &RationalFunction, z0: &ExactScalar, t: usize) -> Result<Polynomial> {
    truncate_quotient(g.num(), g.den(), z0, t)
}

/// `taylor_truncate` on an unreduced quotient `num / den`.
///
/// Computed by exact power-series division in the local variable
/// `w = z - z0`, then re-expanded in powers of `z`.
pub(crate) fn truncate_quotient(num: &Polynomial, den: &Polynomial, z0: &ExactScalar, t: usize) -> Result<Polynomial> {
    if den.eval(z0).is_zero() {
        return Err(Error::PoleAtNode(z0.to_string()));
    }
    let local = series_div(&num.shift(z0), &den.shift(z0), t)?;
    Ok(Polynomial::new(local).shift(&-z0))
}
