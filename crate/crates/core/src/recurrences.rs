//! Linear recurrence sequences indexed by all of `Z`.
//!
//! A sequence satisfies `u(a+d) = c_1 u(a+d-1) + ... + c_d u(a)` with
//! `c_d != 0`, so it runs backward as well as forward. Initial values are
//! `u(0), ..., u(d-1)`.

use std::collections::VecDeque;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polynomials::Polynomial;
use crate::scalars::ExactScalar;

/// Indices with `|a|` up to this are reached by stepping the recurrence;
/// beyond it, by binary powering of the companion matrix.
pub const LINEAR_CUTOFF: i64 = 10_000;

/// The coefficient vector `(c_1, ..., c_d)`.
///
/// Order 0 (an empty vector) is the relation `u(a) = 0`, whose
/// characteristic polynomial is 1; it annihilates only the zero sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct LinearRecurrence {
    c: Vec<ExactScalar>,
}

impl LinearRecurrence {
    pub fn new(c: Vec<ExactScalar>) -> Result<Self> {
        if c.last().is_some_and(ExactScalar::is_zero) {
            return Err(Error::InvalidRecurrence("c_d must be nonzero".into()));
        }
        Ok(LinearRecurrence { c })
    }

    /// Recurrence whose characteristic polynomial is the monic `p`.
    pub fn from_char_poly(p: &Polynomial) -> Result<Self> {
        let d = p.degree().ok_or(Error::ZeroPolynomial)?;
        if !p.is_monic() {
            return Err(Error::InvalidRecurrence("characteristic polynomial must be monic".into()));
        }
        Self::new((1..=d).map(|i| -p.coeff(d - i)).collect())
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.c
    }

    /// `T^d - c_1 T^{d-1} - ... - c_d`.
    pub fn char_poly(&self) -> Polynomial {
        let d = self.order();
        let mut coeffs = vec![ExactScalar::zero(); d + 1];
        coeffs[d] = ExactScalar::one();
        for (i, ci) in self.c.iter().enumerate() {
            coeffs[d - 1 - i] = -ci;
        }
        Polynomial::new(coeffs)
    }

    /// The next term after `window = [u(a), ..., u(a+d-1)]`.
    fn next_term(&self, window: &VecDeque<ExactScalar>) -> ExactScalar {
        let d = self.order();
        self.c.iter().enumerate().map(|(i, ci)| ci * &window[d - 1 - i]).sum()
    }

    /// The term before `window = [u(a+1), ..., u(a+d)]`.
    fn prev_term(&self, window: &VecDeque<ExactScalar>) -> ExactScalar {
        let d = self.order();
        let mut acc = window[d - 1].clone();
        for i in 1..d {
            acc -= &(&self.c[i - 1] * &window[d - 1 - i]);
        }
        &acc / &self.c[d - 1]
    }

    /// Companion matrix `C` with `U(a+1) = C U(a)`.
    pub fn companion(&self) -> Matrix {
        let d = self.order();
        let mut m = Matrix::zeros(d, d);
        for r in 0..d.saturating_sub(1) {
            m[(r, r + 1)] = ExactScalar::one();
        }
        for k in 0..d {
            m[(d - 1, k)] = self.c[d - 1 - k].clone();
        }
        m
    }

    /// `C^{-1}`, with `U(a-1) = C^{-1} U(a)`.
    fn inverse_companion(&self) -> Matrix {
        let d = self.order();
        let mut m = Matrix::zeros(d, d);
        let inv = self.c[d - 1].invert().expect("c_d is nonzero");
        m[(0, d - 1)] = inv.clone();
        for k in 0..d - 1 {
            m[(0, k)] = -(&self.c[d - 2 - k] * &inv);
        }
        for r in 1..d {
            m[(r, r - 1)] = ExactScalar::one();
        }
        m
    }
}

/// A recurrence together with its initial values `u(0..d-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SequenceJson", into = "SequenceJson")]
pub struct RecurrentSequence {
    rec: LinearRecurrence,
    initial: Vec<ExactScalar>,
}

/// Wire form `{"c": [...], "initial": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SequenceJson {
    pub c: Vec<ExactScalar>,
    pub initial: Vec<ExactScalar>,
}

impl TryFrom<SequenceJson> for RecurrentSequence {
    type Error = Error;
    fn try_from(j: SequenceJson) -> Result<Self> {
        RecurrentSequence::new(LinearRecurrence::new(j.c)?, j.initial)
    }
}

impl From<RecurrentSequence> for SequenceJson {
    fn from(s: RecurrentSequence) -> Self {
        SequenceJson { c: s.rec.c, initial: s.initial }
    }
}

impl RecurrentSequence {
    pub fn new(rec: LinearRecurrence, initial: Vec<ExactScalar>) -> Result<Self> {
        if initial.len() != rec.order() {
            return Err(Error::InvalidRecurrence(format!(
                "{} initial values for a recurrence of order {}",
                initial.len(),
                rec.order()
            )));
        }
        Ok(RecurrentSequence { rec, initial })
    }

    pub fn from_ints(c: &[i64], initial: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| ExactScalar::from_int(x)).collect();
        Self::new(LinearRecurrence::new(conv(c))?, conv(initial))
    }

    /// The zero sequence, with the order-0 recurrence.
    pub fn zero() -> Self {
        RecurrentSequence { rec: LinearRecurrence { c: Vec::new() }, initial: Vec::new() }
    }

    pub fn recurrence(&self) -> &LinearRecurrence {
        &self.rec
    }

    pub fn initial(&self) -> &[ExactScalar] {
        &self.initial
    }

    pub fn order(&self) -> usize {
        self.rec.order()
    }

    pub fn char_poly(&self) -> Polynomial {
        self.rec.char_poly()
    }

    /// `[u(a), ..., u(a+d-1)]`.
    pub fn window_at(&self, a: i64) -> Vec<ExactScalar> {
        let d = self.order();
        if d == 0 {
            return Vec::new();
        }
        if a.abs() > LINEAR_CUTOFF {
            let m = if a > 0 {
                self.rec.companion().pow(a as u64)
            } else {
                self.rec.inverse_companion().pow(a.unsigned_abs())
            };
            return m.mul_vec(&self.initial);
        }
        let mut w: VecDeque<ExactScalar> = self.initial.iter().cloned().collect();
        if a >= 0 {
            for _ in 0..a {
                let next = self.rec.next_term(&w);
                w.pop_front();
                w.push_back(next);
            }
        } else {
            for _ in 0..a.unsigned_abs() {
                let prev = self.rec.prev_term(&w);
                w.pop_back();
                w.push_front(prev);
            }
        }
        w.into()
    }

    /// Exact value `u(a)` for any integer `a`.
    pub fn eval_at(&self, a: i64) -> ExactScalar {
        if self.order() == 0 {
            return ExactScalar::zero();
        }
        if (0..self.order() as i64).contains(&a) {
            return self.initial[a as usize].clone();
        }
        self.window_at(a).swap_remove(0)
    }

    /// `u(a)` through `U(a) = C^a U(0)`, independent of the stepping path.
    pub fn companion_eval(&self, a: u64) -> ExactScalar {
        if self.order() == 0 {
            return ExactScalar::zero();
        }
        let m = self.rec.companion().pow(a);
        m.row(0).iter().zip(&self.initial).map(|(x, y)| x * y).sum()
    }

    /// `u(lo), ..., u(hi)`.
    pub fn terms(&self, range: RangeInclusive<i64>) -> Vec<ExactScalar> {
        let (lo, hi) = (*range.start(), *range.end());
        if hi < lo {
            return Vec::new();
        }
        let len = (hi - lo + 1) as usize;
        let d = self.order();
        if d == 0 {
            return vec![ExactScalar::zero(); len];
        }
        let mut w: VecDeque<ExactScalar> = self.window_at(lo).into();
        let mut out = Vec::with_capacity(len);
        while out.len() < len {
            if out.len() + w.len() >= len + d {
                out.extend(w.iter().take(len - out.len()).cloned());
                break;
            }
            let next = self.rec.next_term(&w);
            out.push(w.pop_front().expect("nonempty window"));
            w.push_back(next);
        }
        out
    }
}

/// True iff `rec` holds at every full window of `values`, that is
/// `values[k+d] = sum_i c_i values[k+d-i]` for all valid `k`.
pub fn relation_holds(rec: &LinearRecurrence, values: &[ExactScalar]) -> bool {
    let d = rec.order();
    (0..values.len().saturating_sub(d)).all(|k| {
        let rhs: ExactScalar = rec.c.iter().enumerate().map(|(i, ci)| ci * &values[k + d - 1 - i]).sum();
        values[k + d] == rhs
    })
}

/// Whether `candidate` holds at every index `a` of `window`, i.e.
/// `u(a+k) = c_1 u(a+k-1) + ... + c_k u(a)` for `a` in the window.
pub fn satisfies(seq: &RecurrentSequence, candidate: &LinearRecurrence, window: RangeInclusive<i64>) -> bool {
    let (lo, hi) = (*window.start(), *window.end());
    if hi < lo {
        return true;
    }
    let values = seq.terms(lo..=hi + candidate.order() as i64);
    relation_holds(candidate, &values)
}

/// The minimal-order recurrence of `seq` and its characteristic polynomial.
///
/// The order is the first `k` for which the shifted window
/// `(u(j), ..., u(j+d-1))` with `j = k` is a combination of those with
/// `j < k`; `2d` terms suffice because a sequence of the space is fixed by
/// `d` consecutive terms. The zero sequence gets order 0 and polynomial 1.
pub fn minimal_recurrence(seq: &RecurrentSequence) -> (LinearRecurrence, Polynomial) {
    let d = seq.order();
    let u = seq.terms(0..=2 * d as i64 - 1);
    for k in 0..=d {
        let cols = Matrix::from_rows(
            (0..d).map(|a| (0..k).map(|j| u[a + j].clone()).collect::<Vec<_>>()).collect(),
        );
        let target: Vec<ExactScalar> = (0..d).map(|a| u[a + k].clone()).collect();
        let solved = if k == 0 {
            target.iter().all(ExactScalar::is_zero).then(Vec::new)
        } else {
            cols.solve_consistent(&target).ok().flatten()
        };
        if let Some(x) = solved {
            // u(a+k) = sum_j x_j u(a+j), so c_i = x_{k-i}.
            let c: Vec<ExactScalar> = (1..=k).map(|i| x[k - i].clone()).collect();
            let rec = LinearRecurrence::new(c).expect("minimal polynomial divides P, so P0(0) != 0");
            let poly = rec.char_poly();
            return (rec, poly);
        }
    }
    unreachable!("the defining recurrence of order d always fits")
}
