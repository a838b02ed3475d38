//! Twisted binary forms `F_a(X, Y) = prod_i (X - alpha_i eps_i^a Y)` and their
//! coefficient sequences
//! `U_h(a) = sum_{i_1 < ... < i_h} alpha_{i_1}...alpha_{i_h} (eps_{i_1}...eps_{i_h})^a`.
//!
//! When all `eps_i` equal `eps0`, every `h`-fold product is `eps0^h`, so
//! `U_h(a) = eps0^{h a} U_h(0)` and `U_h(a+1) = eps0^h U_h(a)`. The shorter
//! statements `U_h(a) = eps0^a U_h(0)` and `U_h(a+1) = eps0 U_h(a)` hold only
//! for `h = 1`; this module follows the general formula.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomials::Polynomial;
use crate::recurrences::{relation_holds, LinearRecurrence, RecurrentSequence};
use crate::scalars::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct TwistedFamily {
    alpha: Vec<ExactScalar>,
    eps: Vec<ExactScalar>,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    alpha: Vec<ExactScalar>,
    eps: Vec<ExactScalar>,
}

impl TryFrom<FamilyJson> for TwistedFamily {
    type Error = Error;
    fn try_from(j: FamilyJson) -> Result<Self> {
        TwistedFamily::new(j.alpha, j.eps)
    }
}

impl From<TwistedFamily> for FamilyJson {
    fn from(f: TwistedFamily) -> Self {
        FamilyJson { alpha: f.alpha, eps: f.eps }
    }
}

impl TwistedFamily {
    pub fn new(alpha: Vec<ExactScalar>, eps: Vec<ExactScalar>) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != eps.len() {
            return Err(Error::InvalidInput("alpha and eps need the same positive length".into()));
        }
        if eps.iter().any(ExactScalar::is_zero) {
            return Err(Error::InvalidInput("twists eps_i must be nonzero".into()));
        }
        Ok(TwistedFamily { alpha, eps })
    }

    pub fn from_ints(alpha: &[i64], eps: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| ExactScalar::from_int(x)).collect();
        Self::new(conv(alpha), conv(eps))
    }

    pub fn degree(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[ExactScalar] {
        &self.alpha
    }

    pub fn eps(&self) -> &[ExactScalar] {
        &self.eps
    }

    /// The twisted roots `alpha_i eps_i^a`.
    fn twisted_roots(&self, a: i64) -> Vec<ExactScalar> {
        self.alpha
            .iter()
            .zip(&self.eps)
            .map(|(al, e)| al * &e.powi(a).expect("nonzero twist"))
            .collect()
    }

    fn check_h(&self, h: usize, lo: usize, hi: usize) -> Result<()> {
        if h < lo || h > hi {
            return Err(Error::InvalidInput(format!("h = {h} outside {lo}..={hi}")));
        }
        Ok(())
    }
}

/// Bit masks of the `h`-subsets of `0..d`.
fn subsets(d: usize, h: usize) -> impl Iterator<Item = u64> {
    (0u64..1 << d).filter(move |m| m.count_ones() as usize == h)
}

fn subset_product(values: &[ExactScalar], mask: u64) -> ExactScalar {
    values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).product()
}

/// `U_1(a), ..., U_d(a)` read off the expansion of `prod_i (T - x_i)`,
/// `x_i = alpha_i eps_i^a`: the coefficient of `T^{d-h}` is `(-1)^h U_h(a)`.
pub fn coefficients_by_expansion(fam: &TwistedFamily, a: i64) -> Vec<ExactScalar> {
    let d = fam.degree();
    let p = fam.twisted_roots(a).iter().fold(Polynomial::one(), |acc, x| &acc * &Polynomial::linear(x));
    (1..=d).map(|h| if h % 2 == 0 { p.coeff(d - h) } else { -p.coeff(d - h) }).collect()
}

/// `U_1(a), ..., U_d(a)` by summing over index subsets.
pub fn coefficients_by_subsets(fam: &TwistedFamily, a: i64) -> Vec<ExactScalar> {
    let d = fam.degree();
    let x = fam.twisted_roots(a);
    (1..=d).map(|h| subsets(d, h).map(|m| subset_product(&x, m)).sum()).collect()
}

/// `U_1(a), ..., U_d(a)`; both computations are run and must agree.
pub fn form_coefficients(fam: &TwistedFamily, a: i64) -> Vec<ExactScalar> {
    let u = coefficients_by_expansion(fam, a);
    assert_eq!(u, coefficients_by_subsets(fam, a), "symmetric-function and subset expansions disagree");
    u
}

/// `E_h`: the distinct `h`-fold products of the twists, sorted. `E_0 = {1}`.
pub fn e_set(eps: &[ExactScalar], h: usize) -> Vec<ExactScalar> {
    subsets(eps.len(), h).map(|m| subset_product(eps, m)).collect::<BTreeSet<_>>().into_iter().collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `prod_{eta in set} (T - eta)`.
fn product_poly(set: &[ExactScalar]) -> Polynomial {
    set.iter().fold(Polynomial::one(), |acc, e| &acc * &Polynomial::linear(e))
}

/// `C(d, h)`, `C(m_1 + h - 1, h)`, `C(m_1 + d - h - 1, d - h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalityBound {
    pub binom_d_h: u128,
    pub binom_m1_h: u128,
    pub binom_m1_dh: u128,
}

impl CardinalityBound {
    pub fn min(&self) -> u128 {
        self.binom_d_h.min(self.binom_m1_h).min(self.binom_m1_dh)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSpec {
    pub h: usize,
    pub e_set: Vec<ExactScalar>,
    pub m_h: usize,
    pub m_dual: usize,
    pub charpoly: Polynomial,
    pub bound: CardinalityBound,
    pub bound_holds: bool,
    pub symmetric: bool,
    /// `U_h` satisfies the `charpoly` recurrence on `a = -5..=20`.
    pub recurrence_holds: bool,
}

/// `E_h`, `m_h`, the cardinality bound and the characteristic polynomial
/// `prod_{eta in E_h} (T - eta)` of `U_h`, with the recurrence checked on
/// `-5..=20`.
pub fn coefficient_spec(fam: &TwistedFamily, h: usize) -> Result<CoefficientSpec> {
    let d = fam.degree();
    fam.check_h(h, 1, d)?;
    let e = e_set(&fam.eps, h);
    let m_h = e.len();
    let m_dual = e_set(&fam.eps, d - h).len();
    let m1 = e_set(&fam.eps, 1).len();
    let bound = CardinalityBound {
        binom_d_h: binomial(d, h),
        binom_m1_h: binomial(m1 + h - 1, h),
        binom_m1_dh: binomial(m1 + d - h - 1, d - h),
    };
    let charpoly = product_poly(&e);
    let rec = LinearRecurrence::from_char_poly(&charpoly)?;
    let values: Vec<ExactScalar> = (-5..=20 + m_h as i64).map(|a| uh_value(fam, h, a)).collect();
    Ok(CoefficientSpec {
        h,
        bound_holds: m_h as u128 <= bound.min(),
        symmetric: m_h == m_dual,
        recurrence_holds: relation_holds(&rec, &values),
        e_set: e,
        m_h,
        m_dual,
        charpoly,
        bound,
    })
}

/// `U_h(a)` alone, by the subset sum.
pub fn uh_value(fam: &TwistedFamily, h: usize, a: i64) -> ExactScalar {
    let x = fam.twisted_roots(a);
    subsets(fam.degree(), h).map(|m| subset_product(&x, m)).sum()
}

/// `eta -> eps_1 ... eps_d / eta` maps `E_h` onto `E_{d-h}`.
pub fn duality_bijection(fam: &TwistedFamily, h: usize) -> Result<bool> {
    let d = fam.degree();
    fam.check_h(h, 0, d)?;
    let total: ExactScalar = fam.eps.iter().cloned().product();
    let image: BTreeSet<ExactScalar> =
        e_set(&fam.eps, h).iter().map(|e| &total / e).collect();
    Ok(image.into_iter().collect::<Vec<_>>() == e_set(&fam.eps, d - h))
}

/// The bijection, and on every `a` of `window` the identity
/// `U_h(a) = U_d(a) sum_{|J| = d-h} (alpha_J)^{-1} (eps_J)^{-a}`.
pub fn duality_check(fam: &TwistedFamily, h: usize, window: std::ops::RangeInclusive<i64>) -> Result<bool> {
    let d = fam.degree();
    fam.check_h(h, 1, d.saturating_sub(1))?;
    let bijective = duality_bijection(fam, h)?;
    if fam.alpha.iter().any(ExactScalar::is_zero) {
        return Err(Error::ZeroAlpha);
    }
    let identity = window.into_iter().all(|a| {
        let x = fam.twisted_roots(a);
        let inv: Vec<ExactScalar> = x.iter().map(|v| v.invert().expect("nonzero alpha and eps")).collect();
        let ud = subset_product(&x, (1 << d) - 1);
        let uh: ExactScalar = subsets(d, h).map(|m| subset_product(&x, m)).sum();
        let dual: ExactScalar = subsets(d, d - h).map(|m| subset_product(&inv, m)).sum();
        uh == &ud * &dual
    });
    Ok(bijective && identity)
}

/// `U_h` as a recurrent sequence of order `m_h`, with characteristic
/// polynomial `prod_{eta in E_h} (T - eta)` and initial values
/// `U_h(0..m_h - 1)`.
pub fn uh_sequence(fam: &TwistedFamily, h: usize) -> Result<RecurrentSequence> {
    fam.check_h(h, 1, fam.degree())?;
    let e = e_set(&fam.eps, h);
    let rec = LinearRecurrence::from_char_poly(&product_poly(&e))?;
    let initial = (0..e.len() as i64).map(|a| uh_value(fam, h, a)).collect();
    RecurrentSequence::new(rec, initial)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBlockSet {
    pub h: usize,
    /// Exhaustive products over index subsets.
    pub set: Vec<ExactScalar>,
    /// `eps^i eta^{h-i}` for `0 <= i <= l`, `0 <= h-i <= d-l`.
    pub displayed: Vec<ExactScalar>,
    pub charpoly: Polynomial,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBlockBound {
    pub h: usize,
    pub m_h: usize,
    pub bound: CardinalityBound,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBlockReport {
    pub d: usize,
    pub l: usize,
    pub e_sets: Vec<TwoBlockSet>,
    pub charpolys: Vec<Polynomial>,
    pub bounds: Vec<TwoBlockBound>,
    #[serde(rename = "A")]
    pub a: ExactScalar,
    #[serde(rename = "B")]
    pub b: ExactScalar,
    #[serde(rename = "C")]
    pub c: ExactScalar,
    /// `(T - eps^2)(T - eta^2) = T^2 - A T - B`.
    pub vieta_holds: bool,
    /// `U_2(a+2) = A U_2(a+1) + B U_2(a) + C (eps eta)^a` on `0..=10`.
    pub c_relation_holds: bool,
    /// `prod_i (T - eps_1...eps_d / eps_i)`, annihilating `U_{d-1}`.
    pub ud1_charpoly: Polynomial,
    pub ud1_relation_holds: bool,
}

/// The family with `eps` in the first `l` slots and `eta` in the other
/// `d - l`.
pub fn two_block_family(
    eps: &ExactScalar,
    eta: &ExactScalar,
    l: usize,
    d: usize,
    alpha: &[ExactScalar],
) -> Result<TwoBlockReport> {
    if eps == eta {
        return Err(Error::EqualTwists);
    }
    if d < 2 || l == 0 || l >= d {
        return Err(Error::InvalidInput(format!("need d >= 2 and 1 <= l <= d - 1, got d = {d}, l = {l}")));
    }
    let twists: Vec<ExactScalar> = (0..d).map(|i| if i < l { eps.clone() } else { eta.clone() }).collect();
    let fam = TwistedFamily::new(alpha.to_vec(), twists)?;
    let hs: BTreeSet<usize> = [1, 2, d.saturating_sub(2), d - 1].into_iter().filter(|&h| (1..=d).contains(&h)).collect();
    let mut e_sets = Vec::new();
    let mut bounds = Vec::new();
    for &h in &hs {
        let set = e_set(fam.eps(), h);
        let displayed: Vec<ExactScalar> = (0..=h.min(l))
            .filter(|&i| h - i <= d - l)
            .map(|i| &eps.pow(i as u64) * &eta.pow((h - i) as u64))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let charpoly = product_poly(&displayed);
        let matches = displayed == set && charpoly == product_poly(&set);
        let spec = coefficient_spec(&fam, h)?;
        bounds.push(TwoBlockBound { h, m_h: spec.m_h, holds: spec.bound_holds, bound: spec.bound });
        e_sets.push(TwoBlockSet { h, set, displayed, charpoly, matches });
    }
    let charpolys = e_sets.iter().map(|s| s.charpoly.clone()).collect();

    let (e2, n2) = (eps * eps, eta * eta);
    let a = &e2 + &n2;
    let b = -(&e2 * &n2);
    let vieta = &Polynomial::linear(&e2) * &Polynomial::linear(&n2);
    let vieta_holds = vieta == Polynomial::new(vec![-&b, -&a, ExactScalar::one()]);
    let u2: Vec<ExactScalar> = (0..=12).map(|k| uh_value(&fam, 2, k)).collect();
    let lhs = |k: usize| &(&u2[k + 2] - &(&a * &u2[k + 1])) - &(&b * &u2[k]);
    let en = eps * eta;
    let c = lhs(0);
    let c_relation_holds = (0..=10).all(|k| lhs(k) == &c * &en.pow(k as u64));

    let total: ExactScalar = fam.eps().iter().cloned().product();
    let ud1_charpoly = fam.eps().iter().fold(Polynomial::one(), |acc, e| &acc * &Polynomial::linear(&(&total / e)));
    let ud1_rec = LinearRecurrence::from_char_poly(&ud1_charpoly)?;
    let ud1: Vec<ExactScalar> = (-5..=20 + d as i64).map(|k| uh_value(&fam, d - 1, k)).collect();
    let ud1_relation_holds = relation_holds(&ud1_rec, &ud1);

    Ok(TwoBlockReport {
        d,
        l,
        e_sets,
        charpolys,
        bounds,
        a,
        b,
        c,
        vieta_holds,
        c_relation_holds,
        ud1_charpoly,
        ud1_relation_holds,
    })
}
