//! Exponential polynomials `F(z) = sum_j a_j(z) e^{gamma_j z}` and the bound
//! on their vanishing order.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interpolation::{build_matrix, determinant_formula, factorial, NodeSystem};
use crate::linalg::Matrix;
use crate::polynomials::{check_distinct, Polynomial, Root};
use crate::scalars::{ApproxScalar, ExactScalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpPolyTerm {
    pub a: Polynomial,
    pub gamma: ExactScalar,
}

/// Zero coefficient polynomials are dropped on construction, so `F = 0`
/// exactly when no terms remain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ExpPolyJson")]
pub struct ExponentialPolynomialFunction {
    terms: Vec<ExpPolyTerm>,
}

#[derive(Deserialize)]
struct ExpPolyJson {
    terms: Vec<ExpPolyTerm>,
}

impl TryFrom<ExpPolyJson> for ExponentialPolynomialFunction {
    type Error = Error;
    fn try_from(j: ExpPolyJson) -> Result<Self> {
        Self::new(j.terms)
    }
}

impl ExponentialPolynomialFunction {
    pub fn new(terms: Vec<ExpPolyTerm>) -> Result<Self> {
        check_distinct(terms.iter().map(|t| &t.gamma))?;
        Ok(ExponentialPolynomialFunction { terms: terms.into_iter().filter(|t| !t.a.is_zero()).collect() })
    }

    pub fn terms(&self) -> &[ExpPolyTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `d = sum_j (deg a_j + 1)`.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|t| t.a.coeffs().len()).sum()
    }

    /// The node system `(gamma_j, deg a_j + 1)`.
    pub fn roots(&self) -> Vec<Root> {
        self.terms.iter().map(|t| Root::new(t.gamma.clone(), t.a.coeffs().len())).collect()
    }

    pub fn eval_approx(&self, z: &ApproxScalar) -> ApproxScalar {
        self.derivative_approx(0, z)
    }

    /// `F^{(n)}(z) = sum_j e^{g z} sum_m binom(n, m) a^{(m)}(z) g^{n-m}`.
    pub fn derivative_approx(&self, n: usize, z: &ApproxScalar) -> ApproxScalar {
        let p = z.precision();
        let mut acc = ApproxScalar::zero(p);
        for term in &self.terms {
            let g = ApproxScalar::from_exact(&term.gamma, p);
            let mut inner = Polynomial::zero();
            let mut binom = BigInt::from(1);
            for m in 0..=n {
                inner = &inner + &term.a.nth_derivative(m).scale(&term.gamma.pow((n - m) as u64).scale_int(&binom));
                binom = binom * (n - m) / (m + 1);
            }
            let e = (&g * z).exp();
            acc = &acc + &(&e * &inner.eval_approx(z));
        }
        acc
    }
}

/// `a (a-1) ... (a-i+1)`.
fn falling(a: usize, i: usize) -> BigInt {
    (0..i).fold(BigInt::from(1), |acc, k| acc * (a - k))
}

/// `u(a) = F^{(a)}(z0)` for `a < count`, from
/// `u(a) = sum_j sum_i a_ij a(a-1)...(a-i+1) gamma_j^{a-i}`.
///
/// Only `z0 = 0` is exact: elsewhere the factors `e^{gamma_j z0}` leave
/// `Q(i)`. Shift the `a_j` instead, since the vanishing order is
/// translation invariant.
pub fn taylor_coefficient_sequence(f: &ExponentialPolynomialFunction, z0: &ExactScalar, count: usize) -> Result<Vec<ExactScalar>> {
    if !z0.is_zero() {
        return Err(Error::NonzeroShiftUnsupported);
    }
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    Ok((0..count)
        .map(|a| {
            f.terms
                .iter()
                .flat_map(|t| {
                    t.a.coeffs().iter().enumerate().take(a + 1).map(move |(i, c)| {
                        c.scale_int(&falling(a, i)) * t.gamma.pow((a - i) as u64)
                    })
                })
                .sum()
        })
        .collect())
}

/// Smallest `a` with `F^{(a)}(z0) != 0`.
///
/// The order is at most `d - 1`; exceeding it would mean an arithmetic
/// bug, so it panics rather than returning a value.
pub fn vanishing_order(f: &ExponentialPolynomialFunction, z0: &ExactScalar, cap: usize) -> Result<usize> {
    if !z0.is_zero() {
        return Err(Error::NonzeroShiftUnsupported);
    }
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let d = f.size();
    if cap < d {
        return Err(Error::InvalidInput(format!("cap must be at least d = {d}")));
    }
    let u = taylor_coefficient_sequence(f, z0, cap)?;
    let order = u.iter().position(|x| !x.is_zero());
    match order {
        Some(k) if k < d => Ok(k),
        _ => panic!("vanishing order of a nonzero exponential polynomial exceeds d - 1 = {}", d - 1),
    }
}

/// The `d x d` matrix of `(d/dz)^a (z^i e^{gamma_j z})` at 0; row `a`,
/// column `s_j + i`.
pub fn derivative_matrix(system: &NodeSystem) -> Matrix {
    let d = system.size();
    let mut m = Matrix::zeros(d, d);
    for (r, s) in system.nodes().iter().zip(system.offsets()) {
        for i in 0..r.t {
            for a in i..d {
                m[(a, s + i)] = r.gamma.pow((a - i) as u64).scale_int(&falling(a, i));
            }
        }
    }
    m
}

/// Confirms the derivative matrix is nonsingular, and that its determinant
/// is `(prod_j prod_{i<t_j} i!) det A` with `det A` given by the product
/// formula.
pub fn derivative_determinant_check(system: &NodeSystem) -> bool {
    let det = derivative_matrix(system).determinant();
    let scale: BigInt = system.nodes().iter().flat_map(|r| (0..r.t).map(factorial)).product();
    let formula = determinant_formula(system).scale_int(&scale);
    debug_assert_eq!(build_matrix(system).determinant(), determinant_formula(system));
    !det.is_zero() && det == formula
}
