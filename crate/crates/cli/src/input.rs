//! Wire shapes of the CLI input documents.
//!
//! Inputs are first decoded into these plain structs, so that a document of
//! the wrong shape (exit 2) is told apart from a well-formed document that
//! violates a domain precondition (exit 1, raised by the library
//! constructors).

use recurkit::closedforms::{ClosedFormTerm, ExponentialPolynomialSequence};
use recurkit::exppoly::{ExpPolyTerm, ExponentialPolynomialFunction};
use recurkit::interpolation::{AnalyticFunction, HermiteData, NodeSystem};
use recurkit::nonhomogeneous::{ForcingTerm, NonHomogeneousForm};
use recurkit::recurrences::SequenceJson;
use recurkit::twisted::TwistedFamily;
use recurkit::{ExactScalar, LinearRecurrence, Polynomial, RationalFunction, RecurrentSequence, Result, Root};
use serde::Deserialize;

pub fn sequence(j: SequenceJson) -> Result<RecurrentSequence> {
    RecurrentSequence::new(LinearRecurrence::new(j.c)?, j.initial)
}

#[derive(Deserialize)]
pub struct SequenceWithRoots {
    #[serde(flatten)]
    pub seq: SequenceJson,
    #[serde(default)]
    pub roots: Option<Vec<Root>>,
}

#[derive(Deserialize)]
pub struct Pair {
    pub s1: SequenceJson,
    pub s2: SequenceJson,
    #[serde(default)]
    pub roots1: Option<Vec<Root>>,
    #[serde(default)]
    pub roots2: Option<Vec<Root>>,
}

#[derive(Deserialize)]
pub struct ClosedForm {
    pub terms: Vec<ClosedFormTerm>,
}

impl ClosedForm {
    pub fn build(self) -> Result<ExponentialPolynomialSequence> {
        ExponentialPolynomialSequence::new(self.terms)
    }
}

#[derive(Deserialize)]
pub struct Rational {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Rational {
    pub fn build(self) -> Result<RationalFunction> {
        RationalFunction::new(self.num, self.den)
    }
}

#[derive(Deserialize)]
pub struct PartialFractionInput {
    #[serde(flatten)]
    pub rf: Rational,
    pub roots: Vec<Root>,
}

#[derive(Deserialize)]
pub struct Nodes {
    pub nodes: Vec<Root>,
}

impl Nodes {
    pub fn build(self) -> Result<NodeSystem> {
        NodeSystem::new(self.nodes)
    }
}

#[derive(Deserialize)]
pub struct Hermite {
    pub nodes: Vec<Root>,
    pub values: Vec<Vec<ExactScalar>>,
}

impl Hermite {
    pub fn build(self) -> Result<HermiteData> {
        HermiteData::new(NodeSystem::new(self.nodes)?, self.values)
    }
}

#[derive(Deserialize)]
pub struct ExpPoly {
    pub terms: Vec<ExpPolyTerm>,
}

impl ExpPoly {
    pub fn build(self) -> Result<ExponentialPolynomialFunction> {
        ExponentialPolynomialFunction::new(self.terms)
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Function {
    ExpPoly(ExpPoly),
    Rational(Rational),
}

impl Function {
    pub fn build(self) -> Result<AnalyticFunction> {
        Ok(match self {
            Function::ExpPoly(f) => AnalyticFunction::ExpPoly(f.build()?),
            Function::Rational(r) => AnalyticFunction::Rational(r.build()?),
        })
    }
}

#[derive(Deserialize)]
pub struct Contour {
    pub function: Function,
    pub nodes: Vec<Root>,
    pub z: ExactScalar,
}

#[derive(Deserialize)]
pub struct Form {
    pub b: Vec<ExactScalar>,
    pub forcing: Vec<ForcingTerm>,
    pub head: Vec<ExactScalar>,
}

impl Form {
    pub fn build(self) -> Result<NonHomogeneousForm> {
        NonHomogeneousForm::new(self.b, self.forcing, self.head)
    }
}

#[derive(Deserialize)]
pub struct Factorization {
    pub q: Polynomial,
    pub r_roots: Vec<Root>,
}

#[derive(Deserialize)]
pub struct ToNonHomogeneous {
    pub sequence: SequenceJson,
    #[serde(flatten)]
    pub factorization: Factorization,
}

#[derive(Deserialize)]
pub struct Family {
    pub alpha: Vec<ExactScalar>,
    pub eps: Vec<ExactScalar>,
}

impl Family {
    pub fn build(self) -> Result<TwistedFamily> {
        TwistedFamily::new(self.alpha, self.eps)
    }
}

#[derive(Deserialize)]
pub struct TwoBlock {
    pub eps: ExactScalar,
    pub eta: ExactScalar,
    pub l: usize,
    pub d: usize,
    pub alpha: Vec<ExactScalar>,
}
