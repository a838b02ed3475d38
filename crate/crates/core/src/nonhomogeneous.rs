//! Non-homogeneous form of a recurrence: with `P = Q R` and
//! `R = prod (T - gamma_j)^{t_j}`,
//! `u(a+m) = b_1 u(a+m-1) + ... + b_m u(a) + sum_j sum_i lambda_ij a^i gamma_j^a`.

use serde::{Deserialize, Serialize};

use crate::closedforms::solve_closed_form;
use crate::error::{Error, Result};
use crate::interpolation::{build_matrix, NodeSystem};
use crate::linalg::Matrix;
use crate::polynomials::{check_distinct, expand_root_factors, Polynomial, Root};
use crate::recurrences::{LinearRecurrence, RecurrentSequence};
use crate::scalars::ExactScalar;

/// `sum_i lambda_i a^i gamma^a`, `i < t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForcingTerm {
    pub gamma: ExactScalar,
    pub t: usize,
    pub lambda: Vec<ExactScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormJson", into = "FormJson")]
pub struct NonHomogeneousForm {
    b: Vec<ExactScalar>,
    forcing: Vec<ForcingTerm>,
    head: Vec<ExactScalar>,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    b: Vec<ExactScalar>,
    forcing: Vec<ForcingTerm>,
    head: Vec<ExactScalar>,
}

impl TryFrom<FormJson> for NonHomogeneousForm {
    type Error = Error;
    fn try_from(j: FormJson) -> Result<Self> {
        NonHomogeneousForm::new(j.b, j.forcing, j.head)
    }
}

impl From<NonHomogeneousForm> for FormJson {
    fn from(f: NonHomogeneousForm) -> Self {
        FormJson { b: f.b, forcing: f.forcing, head: f.head }
    }
}

impl NonHomogeneousForm {
    pub fn new(b: Vec<ExactScalar>, forcing: Vec<ForcingTerm>, head: Vec<ExactScalar>) -> Result<Self> {
        if b.last().is_some_and(ExactScalar::is_zero) {
            return Err(Error::InvalidRecurrence("Q(0) must be nonzero".into()));
        }
        if head.len() != b.len() {
            return Err(Error::InvalidInput(format!("{} head values for m = {}", head.len(), b.len())));
        }
        check_distinct(forcing.iter().map(|f| &f.gamma))?;
        for f in &forcing {
            if f.gamma.is_zero() {
                return Err(Error::InvalidInput("forcing roots must be nonzero".into()));
            }
            if f.t == 0 || f.lambda.len() != f.t {
                return Err(Error::InvalidInput(format!("need t = {} lambda values at {}", f.t, f.gamma)));
            }
        }
        Ok(NonHomogeneousForm { b, forcing, head })
    }

    pub fn b(&self) -> &[ExactScalar] {
        &self.b
    }

    pub fn forcing(&self) -> &[ForcingTerm] {
        &self.forcing
    }

    pub fn head(&self) -> &[ExactScalar] {
        &self.head
    }

    /// `m + sum t_j`.
    pub fn order(&self) -> usize {
        self.b.len() + self.forcing.iter().map(|f| f.t).sum::<usize>()
    }

    /// `Q(T) = T^m - b_1 T^{m-1} - ... - b_m`.
    pub fn q(&self) -> Polynomial {
        LinearRecurrence::new(self.b.clone()).expect("validated").char_poly()
    }

    pub fn r_roots(&self) -> Vec<Root> {
        self.forcing.iter().map(|f| Root::new(f.gamma.clone(), f.t)).collect()
    }

    /// The forcing term at `a`.
    pub fn forcing_at(&self, a: i64) -> ExactScalar {
        let x = ExactScalar::from_int(a);
        self.forcing
            .iter()
            .map(|f| &Polynomial::new(f.lambda.clone()).eval(&x) * &f.gamma.powi(a).expect("nonzero root"))
            .sum()
    }
}

/// The homogeneous sequence with characteristic polynomial `Q R`, whose
/// initial values come from running the non-homogeneous relation forward.
pub fn from_nonhomogeneous(form: &NonHomogeneousForm) -> RecurrentSequence {
    let p = &form.q() * &expand_root_factors(&form.r_roots()).expect("validated roots");
    let rec = LinearRecurrence::from_char_poly(&p).expect("Q(0) R(0) != 0");
    let m = form.b.len();
    let mut u = form.head.clone();
    for a in 0..form.order() - m {
        let next: ExactScalar =
            form.b.iter().enumerate().map(|(i, bi)| bi * &u[a + m - 1 - i]).sum::<ExactScalar>() + form.forcing_at(a as i64);
        u.push(next);
    }
    RecurrentSequence::new(rec, u).expect("d initial values")
}

/// Split `seq` along `P = Q R`: `head = u(0..m-1)` and the `lambda_ij` fitted
/// to the residual `r(a) = u(a+m) - sum b_i u(a+m-i)` at `a = 0..sum t_j - 1`.
pub fn to_nonhomogeneous(seq: &RecurrentSequence, q: &Polynomial, r_roots: &[Root]) -> Result<NonHomogeneousForm> {
    let b = LinearRecurrence::from_char_poly(q)?.coefficients().to_vec();
    if &expand_root_factors(r_roots)? * q != seq.char_poly() {
        return Err(Error::FactorizationMismatch);
    }
    let m = b.len();
    let n: usize = r_roots.iter().map(|r| r.t).sum();
    let u = seq.terms(0..=(m + n) as i64 - 1);
    let residual: Vec<ExactScalar> = (0..n)
        .map(|a| &u[a + m] - &b.iter().enumerate().map(|(i, bi)| bi * &u[a + m - 1 - i]).sum::<ExactScalar>())
        .collect();
    let fitted = solve_closed_form(r_roots, &residual)?;
    let forcing = fitted
        .into_iter()
        .map(|term| ForcingTerm {
            lambda: (0..term.t).map(|i| term.p.coeff(i)).collect(),
            gamma: term.gamma,
            t: term.t,
        })
        .collect();
    NonHomogeneousForm::new(b, forcing, u[..m].to_vec())
}

/// `I_m (+) A`, with `A` the generalized Vandermonde matrix of `R`.
pub fn transition_matrix(q: &Polynomial, r_roots: &[Root]) -> Result<Matrix> {
    let m = q.degree().ok_or(Error::ZeroPolynomial)?;
    let system = NodeSystem::new(r_roots.to_vec())?;
    Ok(Matrix::identity(m).block_diag(&build_matrix(&system)))
}
