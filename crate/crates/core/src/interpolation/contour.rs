//! Numerical check of the contour-integral form of the Hermite interpolant:
//! `f(z) = F(z) + (1 / 2 pi i) \oint Phi(zeta) d zeta` with
//! `Phi(zeta) = F(zeta) / (z - zeta) prod_j ((z - gamma_j) / (zeta - gamma_j))^{t_j}`.

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{hermite_interpolate, HermiteData, NodeSystem};
use crate::error::{Error, Result};
use crate::exppoly::ExponentialPolynomialFunction;
use crate::polynomials::{split_roots, truncate_quotient, Polynomial, RationalFunction};
use crate::scalars::{ApproxScalar, ExactScalar};

/// Environment variable overriding the default working precision.
pub const PRECISION_ENV: &str = "RECURKIT_PRECISION_BITS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalyticFunction {
    ExpPoly(ExponentialPolynomialFunction),
    Rational(RationalFunction),
}

impl AnalyticFunction {
    fn eval(&self, z: &ApproxScalar) -> ApproxScalar {
        match self {
            AnalyticFunction::ExpPoly(f) => f.eval_approx(z),
            AnalyticFunction::Rational(r) => &r.num().eval_approx(z) / &r.den().eval_approx(z),
        }
    }

    /// `F^{(i)}(gamma)` for `i < t`.
    fn derivatives(&self, gamma: &ExactScalar, t: usize, bits: usize) -> Result<Vec<ApproxScalar>> {
        match self {
            AnalyticFunction::ExpPoly(f) => {
                let g = ApproxScalar::from_exact(gamma, bits);
                Ok((0..t).map(|i| f.derivative_approx(i, &g)).collect())
            }
            AnalyticFunction::Rational(r) => {
                let local = truncate_quotient(r.num(), r.den(), gamma, t)?;
                Ok((0..t).map(|i| ApproxScalar::from_exact(&local.nth_derivative(i).eval(gamma), bits)).collect())
            }
        }
    }
}

/// Circle radius, number of trapezoid nodes and mantissa bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContourParams {
    pub radius: BigRational,
    pub points: usize,
    pub bits: usize,
}

impl ContourParams {
    /// 128 unless `RECURKIT_PRECISION_BITS` holds a valid integer.
    pub fn default_bits() -> usize {
        std::env::var(PRECISION_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(128)
    }
}

impl Default for ContourParams {
    fn default() -> Self {
        ContourParams { radius: BigRational::from_integer(2.into()), points: 256, bits: Self::default_bits() }
    }
}

#[derive(Clone, Debug)]
pub struct ContourReport {
    /// `|f(z) - F(z) - integral|`.
    pub residual: ApproxScalar,
    pub interpolant: ApproxScalar,
    pub function: ApproxScalar,
    pub integral: ApproxScalar,
    pub center: ExactScalar,
    pub bits: usize,
    pub points: usize,
}

fn check_poles(den: &Polynomial, center: &ExactScalar, r2: &BigRational, radius: &BigRational) -> Result<()> {
    if den.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    match split_roots(den) {
        Ok(roots) => {
            if roots.iter().any(|p| (&p.gamma - center).norm() <= *r2) {
                return Err(Error::PoleInsideContour);
            }
            Ok(())
        }
        Err(Error::RootsDontSplit(_)) => winding_check(den, center, radius),
        Err(e) => Err(e),
    }
}

/// Argument principle in double precision: counts zeros of `den` inside
/// the circle by the winding of `den(zeta)` around 0.
fn winding_check(den: &Polynomial, center: &ExactScalar, radius: &BigRational) -> Result<()> {
    let p = 64;
    let c = ApproxScalar::from_exact(center, p);
    let r = ApproxScalar::from_exact(&ExactScalar::real(radius.clone()), p);
    let n = 4096;
    let mut total = 0.0f64;
    let mut prev: Option<(f64, f64)> = None;
    let scale: f64 = den.coeffs().iter().map(|x| ApproxScalar::from_exact(x, p).abs_f64()).sum();
    for k in 0..=n {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let w = ApproxScalar::from_exact(&ExactScalar::real(BigRational::from_float(theta).expect("finite")), p);
        let zeta = &c + &(&r * &ApproxScalar::cis(w.re(), p));
        let v = den.eval_approx(&zeta);
        let (re, im) = (v.re_f64(), v.im_f64());
        if re.hypot(im) <= 1e-12 * scale.max(1.0) {
            return Err(Error::PoleInsideContour);
        }
        if let Some((pr, pi)) = prev {
            // arg(v / prev)
            total += (im * pr - re * pi).atan2(re * pr + im * pi);
        }
        prev = Some((re, im));
    }
    if (total / (2.0 * std::f64::consts::PI)).round() != 0.0 {
        return Err(Error::PoleInsideContour);
    }
    Ok(())
}

/// Compares the exact Hermite interpolant of `F`'s derivative data at `z`
/// with `F(z)` plus the trapezoid approximation of the contour integral on
/// the circle of `params.radius` around the centroid of the nodes.
pub fn contour_residual(
    f: &AnalyticFunction,
    system: &NodeSystem,
    z: &ExactScalar,
    params: &ContourParams,
) -> Result<ContourReport> {
    let (bits, n) = (params.bits, params.points);
    if n < 64 {
        return Err(Error::InvalidInput("at least 64 quadrature points are required".into()));
    }
    if bits < 24 {
        return Err(Error::InvalidInput("at least 24 bits of precision are required".into()));
    }
    if !params.radius.is_positive() {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let nodes = system.nodes();
    if nodes.is_empty() {
        return Err(Error::InvalidInput("need at least one node".into()));
    }
    let center = &nodes.iter().map(|r| r.gamma.clone()).sum::<ExactScalar>() / &ExactScalar::from_int(nodes.len() as i64);
    let r2 = &params.radius * &params.radius;
    for node in nodes {
        let dist = (&node.gamma - &center).norm();
        if dist == r2 {
            return Err(Error::NodeOnContour(node.gamma.to_string()));
        }
        if dist > r2 {
            return Err(Error::PointOutsideContour(node.gamma.to_string()));
        }
    }
    if (z - &center).norm() >= r2 {
        return Err(Error::PointOutsideContour(z.to_string()));
    }
    if let AnalyticFunction::Rational(rf) = f {
        check_poles(rf.den(), &center, &r2, &params.radius)?;
    }

    // f(z) = sum_ij eta_ij L_ij(z), with L_ij the exact Hermite basis.
    let za = ApproxScalar::from_exact(z, bits);
    let mut interpolant = ApproxScalar::zero(bits);
    for (j, node) in nodes.iter().enumerate() {
        let eta = f.derivatives(&node.gamma, node.t, bits)?;
        for (i, e) in eta.iter().enumerate() {
            let unit = nodes
                .iter()
                .enumerate()
                .map(|(k, r)| (0..r.t).map(|m| if (k, m) == (j, i) { ExactScalar::one() } else { ExactScalar::zero() }).collect())
                .collect();
            let basis = hermite_interpolate(&HermiteData::new(system.clone(), unit)?);
            interpolant = &interpolant + &(e * &basis.eval_approx(&za));
        }
    }

    let c = ApproxScalar::from_exact(&center, bits);
    let radius = ApproxScalar::from_exact(&ExactScalar::real(params.radius.clone()), bits);
    let gammas: Vec<(ApproxScalar, usize)> =
        nodes.iter().map(|r| (ApproxScalar::from_exact(&r.gamma, bits), r.t)).collect();
    let two_pi_over_n = &ApproxScalar::from_real(ApproxScalar::pi(bits), bits)
        * &ApproxScalar::from_exact(&ExactScalar::ratio(2, n as i64), bits);
    let mut sum = ApproxScalar::zero(bits);
    for k in 0..n {
        let theta = &two_pi_over_n * &ApproxScalar::from_exact(&ExactScalar::from_int(k as i64), bits);
        let offset = &radius * &ApproxScalar::cis(theta.re(), bits);
        let zeta = &c + &offset;
        let mut phi = &f.eval(&zeta) / &(&za - &zeta);
        for (g, t) in &gammas {
            let ratio = &(&za - g) / &(&zeta - g);
            for _ in 0..*t {
                phi = &phi * &ratio;
            }
        }
        sum = &sum + &(&phi * &offset);
    }
    let integral = &sum / &ApproxScalar::from_exact(&ExactScalar::from_int(n as i64), bits);
    let function = f.eval(&za);
    let residual = (&(&interpolant - &function) - &integral).abs();
    Ok(ContourReport { residual, interpolant, function, integral, center, bits, points: n })
}
