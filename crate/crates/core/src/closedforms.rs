//! Exponential-polynomial closed forms `u(a) = sum_j p_j(a) gamma_j^a`,
//! generating functions, partial fractions and the ring operations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polynomials::{
    check_distinct, expand_root_factors, monic_gcd, series_div, split_roots, Polynomial, RationalFunction, Root,
};
use crate::recurrences::{LinearRecurrence, RecurrentSequence};
use crate::scalars::ExactScalar;

/// One summand `p(a) gamma^a`, with `deg p < t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedFormTerm {
    pub gamma: ExactScalar,
    pub t: usize,
    pub p: Polynomial,
}

/// Closed form of a sequence whose characteristic polynomial splits.
///
/// Canonical: terms with `p = 0` are dropped and the rest sorted by `gamma`,
/// so two closed forms of the same sequence compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClosedFormJson")]
pub struct ExponentialPolynomialSequence {
    terms: Vec<ClosedFormTerm>,
}

#[derive(Deserialize)]
struct ClosedFormJson {
    terms: Vec<ClosedFormTerm>,
}

impl TryFrom<ClosedFormJson> for ExponentialPolynomialSequence {
    type Error = Error;
    fn try_from(j: ClosedFormJson) -> Result<Self> {
        Self::new(j.terms)
    }
}

impl ExponentialPolynomialSequence {
    pub fn new(terms: Vec<ClosedFormTerm>) -> Result<Self> {
        check_distinct(terms.iter().map(|t| &t.gamma))?;
        for term in &terms {
            if term.gamma.is_zero() {
                return Err(Error::InvalidInput("closed-form roots must be nonzero".into()));
            }
            if term.t == 0 || term.p.degree().is_some_and(|d| d >= term.t) {
                return Err(Error::InvalidInput(format!("deg p must be below t = {} at {}", term.t, term.gamma)));
            }
        }
        let mut terms: Vec<_> = terms.into_iter().filter(|t| !t.p.is_zero()).collect();
        terms.sort_by(|a, b| a.gamma.cmp(&b.gamma));
        Ok(ExponentialPolynomialSequence { terms })
    }

    pub fn terms(&self) -> &[ClosedFormTerm] {
        &self.terms
    }

    pub fn roots(&self) -> Vec<Root> {
        self.terms.iter().map(|t| Root::new(t.gamma.clone(), t.t)).collect()
    }

    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.t).sum()
    }

    pub fn eval(&self, a: i64) -> ExactScalar {
        let x = ExactScalar::from_int(a);
        self.terms
            .iter()
            .map(|t| &t.p.eval(&x) * &t.gamma.powi(a).expect("nonzero root"))
            .sum()
    }
}

/// The recurrence with characteristic polynomial `prod (T - gamma_j)^{t_j}`
/// and initial values read off the closed form.
pub fn from_closed_form(eps: &ExponentialPolynomialSequence) -> RecurrentSequence {
    let p = expand_root_factors(&eps.roots()).expect("canonical roots are distinct");
    let rec = LinearRecurrence::from_char_poly(&p).expect("monic with nonzero constant term");
    let initial = (0..eps.order() as i64).map(|a| eps.eval(a)).collect();
    RecurrentSequence::new(rec, initial).expect("d initial values")
}

/// Roots of the characteristic polynomial: supplied ones are checked
/// exactly, otherwise they are searched for in `Q(i)`.
pub fn resolve_roots(seq: &RecurrentSequence, roots: Option<&[Root]>) -> Result<Vec<Root>> {
    let p = seq.char_poly();
    match roots {
        Some(r) => {
            if expand_root_factors(r)? != p {
                return Err(Error::RootMismatch);
            }
            let mut r = r.to_vec();
            r.sort_by(|a, b| a.gamma.cmp(&b.gamma));
            Ok(r)
        }
        None if seq.order() == 0 => Ok(Vec::new()),
        None => split_roots(&p),
    }
}

/// Solve for the coefficients `v_ij` of the basis `a^i gamma_j^a` from
/// `values = u(0..d-1)`.
pub(crate) fn solve_closed_form(roots: &[Root], values: &[ExactScalar]) -> Result<Vec<ClosedFormTerm>> {
    let d: usize = roots.iter().map(|r| r.t).sum();
    let rows: Vec<Vec<ExactScalar>> = (0..d as u64)
        .map(|a| {
            let x = ExactScalar::from_int(a as i64);
            roots
                .iter()
                .flat_map(|r| {
                    let g = r.gamma.pow(a);
                    (0..r.t as u64).map(|i| &x.pow(i) * &g).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let v = if d == 0 { Vec::new() } else { Matrix::from_rows(rows).solve(values)? };
    let mut offset = 0;
    Ok(roots
        .iter()
        .map(|r| {
            let p = Polynomial::new(v[offset..offset + r.t].to_vec());
            offset += r.t;
            ClosedFormTerm { gamma: r.gamma.clone(), t: r.t, p }
        })
        .collect())
}

/// Closed form of `seq`, by a change of basis at `a = 0..d-1`.
pub fn to_closed_form(seq: &RecurrentSequence, roots: Option<&[Root]>) -> Result<ExponentialPolynomialSequence> {
    let roots = resolve_roots(seq, roots)?;
    ExponentialPolynomialSequence::new(solve_closed_form(&roots, seq.initial())?)
}

/// `sum_{a >= 0} u(a) z^a` as a reduced rational function.
///
/// Before reduction the denominator is `1 - sum c_i z^i` and the numerator
/// has coefficients `u(j) - sum_{i <= j} c_i u(j - i)`.
pub fn generating_function(seq: &RecurrentSequence) -> RationalFunction {
    let c = seq.recurrence().coefficients();
    let u = seq.initial();
    let num: Vec<ExactScalar> = (0..seq.order())
        .map(|j| {
            let mut acc = u[j].clone();
            for i in 1..=j {
                acc -= &(&c[i - 1] * &u[j - i]);
            }
            acc
        })
        .collect();
    let mut den = vec![ExactScalar::one()];
    den.extend(c.iter().map(|ci| -ci));
    RationalFunction::new(Polynomial::new(num), Polynomial::new(den)).expect("denominator has constant term 1")
}

/// Coefficients `q_i` of `1 / (1 - gamma z)^{i+1}`, `i < t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFractionBlock {
    pub gamma: ExactScalar,
    pub t: usize,
    pub q: Vec<ExactScalar>,
}

/// `prod_j (1 - gamma_j z)^{t_j}`.
fn reversed_factors(roots: &[Root]) -> Polynomial {
    roots.iter().fold(Polynomial::one(), |acc, r| {
        &acc * &Polynomial::new(vec![ExactScalar::one(), -&r.gamma]).pow(r.t)
    })
}

/// Decompose `rf = sum_j sum_i q_ij / (1 - gamma_j z)^{i+1}`.
pub fn partial_fractions(rf: &RationalFunction, den_roots: &[Root]) -> Result<Vec<PartialFractionBlock>> {
    check_distinct(den_roots.iter().map(|r| &r.gamma))?;
    let (num, den) = (rf.num(), rf.den());
    let expected = reversed_factors(den_roots);
    if den_roots.iter().any(|r| r.gamma.is_zero() || r.t == 0) || den.degree() != expected.degree() {
        return Err(Error::DenominatorMismatch);
    }
    let scale = den.leading().expect("nonzero") / expected.leading().expect("nonzero");
    if expected.scale(&scale) != *den {
        return Err(Error::DenominatorMismatch);
    }
    if num.degree().is_some_and(|d| Some(d) >= den.degree()) {
        return Err(Error::DegreeTooLarge);
    }
    // With den = scale * expected, work with num' = num / scale over `expected`.
    let num = num.scale(&scale.invert()?);
    let mut blocks = Vec::with_capacity(den_roots.len());
    for r in den_roots {
        // s = 1 - gamma z, so z = (1 - s) / gamma, and s^t U is regular at s = 0.
        let ginv = r.gamma.invert()?;
        let z_of_s = Polynomial::new(vec![ginv.clone(), -&ginv]);
        let local_num = num.compose(&z_of_s);
        let local_den = expected.compose(&z_of_s);
        let shifted: Vec<ExactScalar> = local_den.coeffs()[r.t..].to_vec();
        debug_assert!(local_den.coeffs()[..r.t].iter().all(ExactScalar::is_zero));
        let g = series_div(&local_num, &Polynomial::new(shifted), r.t)?;
        let q = (0..r.t).map(|i| g[r.t - 1 - i].clone()).collect();
        blocks.push(PartialFractionBlock { gamma: r.gamma.clone(), t: r.t, q });
    }
    // Clearing denominators must give back the numerator.
    let mut recombined = Polynomial::zero();
    for b in &blocks {
        let single = Root::new(b.gamma.clone(), 1);
        for (i, q) in b.q.iter().enumerate() {
            let cofactor = expected
                .exact_div(&reversed_factors(std::slice::from_ref(&single)).pow(i + 1))?
                .expect("factor of the denominator");
            recombined = &recombined + &cofactor.scale(q);
        }
    }
    assert_eq!(recombined, num, "partial fraction recombination failed");
    Ok(blocks)
}

/// Termwise sum, annihilated by `P1 P2 / gcd(P1, P2)`.
pub fn seq_add(s1: &RecurrentSequence, s2: &RecurrentSequence) -> RecurrentSequence {
    let (p1, p2) = (s1.char_poly(), s2.char_poly());
    let g = monic_gcd(&p1, &p2).expect("characteristic polynomials are nonzero");
    let p = (&p1 * &p2).exact_div(&g).expect("nonzero gcd").expect("gcd divides");
    let rec = LinearRecurrence::from_char_poly(&p).expect("divides P1 P2, so p(0) != 0");
    let d = rec.order() as i64;
    let initial = s1.terms(0..=d - 1).into_iter().zip(s2.terms(0..=d - 1)).map(|(x, y)| x + y).collect();
    RecurrentSequence::new(rec, initial).expect("d initial values")
}

/// `prod_j prod_k (T - gamma_j gamma'_k)^{t_j + t'_k - 1}`, where a product
/// `gamma_j gamma'_k` reached by several pairs keeps the largest exponent.
pub fn product_roots(r1: &[Root], r2: &[Root]) -> Vec<Root> {
    let mut merged: BTreeMap<ExactScalar, usize> = BTreeMap::new();
    for a in r1 {
        for b in r2 {
            let e = merged.entry(&a.gamma * &b.gamma).or_insert(0);
            *e = (*e).max(a.t + b.t - 1);
        }
    }
    merged.into_iter().map(|(gamma, t)| Root::new(gamma, t)).collect()
}

/// Termwise product. Both characteristic polynomials must split over
/// `Q(i)`; roots may be supplied to skip the search.
pub fn seq_mul(
    s1: &RecurrentSequence,
    s2: &RecurrentSequence,
    roots1: Option<&[Root]>,
    roots2: Option<&[Root]>,
) -> Result<RecurrentSequence> {
    let r1 = resolve_roots(s1, roots1)?;
    let r2 = resolve_roots(s2, roots2)?;
    let p = expand_root_factors(&product_roots(&r1, &r2))?;
    let rec = LinearRecurrence::from_char_poly(&p)?;
    let d = rec.order() as i64;
    let initial = s1.terms(0..=d - 1).into_iter().zip(s2.terms(0..=d - 1)).map(|(x, y)| x * y).collect();
    RecurrentSequence::new(rec, initial)
}
