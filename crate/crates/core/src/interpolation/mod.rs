//! Generalized Vandermonde matrices and Hermite interpolation.

mod contour;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use contour::{contour_residual, AnalyticFunction, ContourParams, ContourReport};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polynomials::{check_distinct, truncate_quotient, Polynomial, Root};
use crate::scalars::ExactScalar;

/// Distinct nodes `gamma_j` with multiplicities `t_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NodesJson")]
pub struct NodeSystem {
    nodes: Vec<Root>,
}

#[derive(Deserialize)]
struct NodesJson {
    nodes: Vec<Root>,
}

impl TryFrom<NodesJson> for NodeSystem {
    type Error = Error;
    fn try_from(j: NodesJson) -> Result<Self> {
        NodeSystem::new(j.nodes)
    }
}

impl NodeSystem {
    pub fn new(nodes: Vec<Root>) -> Result<Self> {
        check_distinct(nodes.iter().map(|r| &r.gamma))?;
        if nodes.iter().any(|r| r.t == 0) {
            return Err(Error::InvalidInput("node multiplicities must be positive".into()));
        }
        Ok(NodeSystem { nodes })
    }

    pub fn nodes(&self) -> &[Root] {
        &self.nodes
    }

    /// `d = t_1 + ... + t_l`.
    pub fn size(&self) -> usize {
        self.nodes.iter().map(|r| r.t).sum()
    }

    /// Row offsets `s_j = t_1 + ... + t_{j-1}`.
    pub fn offsets(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .scan(0, |acc, r| {
                let s = *acc;
                *acc += r.t;
                Some(s)
            })
            .collect()
    }
}

/// Derivative data `eta_ij = f^{(i)}(gamma_j)`, `i < t_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HermiteJson", into = "HermiteJson")]
pub struct HermiteData {
    system: NodeSystem,
    values: Vec<Vec<ExactScalar>>,
}

#[derive(Serialize, Deserialize)]
struct HermiteJson {
    nodes: Vec<Root>,
    values: Vec<Vec<ExactScalar>>,
}

impl TryFrom<HermiteJson> for HermiteData {
    type Error = Error;
    fn try_from(j: HermiteJson) -> Result<Self> {
        HermiteData::new(NodeSystem::new(j.nodes)?, j.values)
    }
}

impl From<HermiteData> for HermiteJson {
    fn from(h: HermiteData) -> Self {
        HermiteJson { nodes: h.system.nodes, values: h.values }
    }
}

impl HermiteData {
    pub fn new(system: NodeSystem, values: Vec<Vec<ExactScalar>>) -> Result<Self> {
        if values.len() != system.nodes.len() || system.nodes.iter().zip(&values).any(|(r, v)| v.len() != r.t) {
            return Err(Error::InvalidInput("need exactly t_j values at each node".into()));
        }
        Ok(HermiteData { system, values })
    }

    /// The derivative data of `g` at the nodes of `system`.
    pub fn from_polynomial(system: NodeSystem, g: &Polynomial) -> Self {
        let values = system
            .nodes
            .iter()
            .map(|r| (0..r.t).map(|i| g.nth_derivative(i).eval(&r.gamma)).collect())
            .collect();
        HermiteData { system, values }
    }

    pub fn system(&self) -> &NodeSystem {
        &self.system
    }

    pub fn values(&self) -> &[Vec<ExactScalar>] {
        &self.values
    }

    /// Whether `f` meets every derivative condition exactly.
    pub fn is_interpolated_by(&self, f: &Polynomial) -> bool {
        *self == Self::from_polynomial(self.system.clone(), f)
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The `d x d` matrix with entry `binom(k, i) gamma_j^{k-i}` in row
/// `s_j + i`, column `k`. Applied to the coefficients of `f` it yields the
/// normalised derivatives `f^{(i)}(gamma_j) / i!`.
pub fn build_matrix(system: &NodeSystem) -> Matrix {
    let d = system.size();
    let mut m = Matrix::zeros(d, d);
    for (r, s) in system.nodes.iter().zip(system.offsets()) {
        for i in 0..r.t {
            for k in i..d {
                m[(s + i, k)] = r.gamma.pow((k - i) as u64).scale_int(&binomial(k, i));
            }
        }
    }
    m
}

/// `prod_{i<j} (gamma_j - gamma_i)^{t_i t_j}`.
pub fn determinant_formula(system: &NodeSystem) -> ExactScalar {
    let n = &system.nodes;
    let mut acc = ExactScalar::one();
    for j in 0..n.len() {
        for i in 0..j {
            acc = &acc * &(&n[j].gamma - &n[i].gamma).pow((n[i].t * n[j].t) as u64);
        }
    }
    acc
}

/// Determinant of [`build_matrix`] by exact elimination, checked against
/// [`determinant_formula`].
pub fn determinant(system: &NodeSystem) -> ExactScalar {
    let det = build_matrix(system).determinant();
    assert_eq!(det, determinant_formula(system), "generalized Vandermonde determinant mismatch");
    det
}

/// `f = sum_j h_j T_{p_j / h_j, gamma_j, t_j}`, where
/// `h_j = prod_{k != j} (z - gamma_k)^{t_k}` and
/// `p_j = sum_i eta_ij (z - gamma_j)^i / i!`.
pub fn hermite_interpolate(data: &HermiteData) -> Polynomial {
    let nodes = &data.system.nodes;
    let mut f = Polynomial::zero();
    for (j, (r, eta)) in nodes.iter().zip(&data.values).enumerate() {
        let h = nodes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .fold(Polynomial::one(), |acc, (_, o)| &acc * &Polynomial::linear(&o.gamma).pow(o.t));
        let lin = Polynomial::linear(&r.gamma);
        let p = eta.iter().enumerate().fold(Polynomial::zero(), |acc, (i, e)| {
            let c = e / &ExactScalar::from_bigint(factorial(i));
            &acc + &lin.pow(i).scale(&c)
        });
        let trunc = truncate_quotient(&p, &h, &r.gamma, r.t).expect("other nodes are not roots of h_j");
        f = &f + &(&h * &trunc);
    }
    f
}

/// Newton form over the node sequence with each `gamma_j` written `t_j`
/// times; confluent entries of the divided-difference table are
/// `eta_ij / i!`.
pub fn newton_interpolate(data: &HermiteData) -> Polynomial {
    let mut z = Vec::new();
    let mut owner = Vec::new();
    for (j, r) in data.system.nodes.iter().enumerate() {
        for _ in 0..r.t {
            z.push(r.gamma.clone());
            owner.push(j);
        }
    }
    let d = z.len();
    // table[i] holds f[z_i, ..., z_{i+k}] after pass k.
    let mut table: Vec<ExactScalar> = owner.iter().map(|&j| data.values[j][0].clone()).collect();
    let mut coeffs = Vec::with_capacity(d);
    if d > 0 {
        coeffs.push(table[0].clone());
    }
    for k in 1..d {
        for i in 0..d - k {
            table[i] = if z[i] == z[i + k] {
                &data.values[owner[i]][k] / &ExactScalar::from_bigint(factorial(k))
            } else {
                &(&table[i + 1] - &table[i]) / &(&z[i + k] - &z[i])
            };
        }
        coeffs.push(table[0].clone());
    }
    let mut f = Polynomial::zero();
    let mut basis = Polynomial::one();
    for (k, c) in coeffs.iter().enumerate() {
        f = &f + &basis.scale(c);
        basis = &basis * &Polynomial::linear(&z[k]);
    }
    f
}

/// Direct solve of `A b = (eta_ij / i!)` with `A` from [`build_matrix`].
pub fn solve_interpolation(data: &HermiteData) -> Result<Polynomial> {
    let rhs: Vec<ExactScalar> = data
        .values
        .iter()
        .flat_map(|eta| eta.iter().enumerate().map(|(i, e)| e / &ExactScalar::from_bigint(factorial(i))))
        .collect();
    if rhs.is_empty() {
        return Ok(Polynomial::zero());
    }
    Ok(Polynomial::new(build_matrix(&data.system).solve(&rhs)?))
}
