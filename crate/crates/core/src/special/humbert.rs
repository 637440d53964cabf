//! The confluent Humbert function
//! `Phi_2^{(m)}(beta_1..beta_m; gamma; x_1..x_m)
//!   = sum (beta_1)_{a_1}..(beta_m)_{a_m} / (gamma)_{|a|} prod x_i^{a_i} / a_i!`.

use libm::lgamma;
use num_complex::Complex64;

use super::quadrature::cached_simplex;
use crate::Error;

/// Series arguments must satisfy `sum |x_j| <= SERIES_RADIUS`.
pub const SERIES_RADIUS: f64 = 40.0;
const MAX_DEGREE: usize = 500;
const TAIL: f64 = 1e-18;

#[derive(Debug, Clone, PartialEq)]
pub struct HumbertParams {
    pub betas: Vec<f64>,
    pub gamma: f64,
    pub xs: Vec<f64>,
}

impl HumbertParams {
    pub fn new(betas: Vec<f64>, gamma: f64, xs: Vec<f64>) -> Self {
        HumbertParams { betas, gamma, xs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HumbertRoute {
    Series,
    /// Simplex quadrature with the given per-axis order.
    Quadrature(usize),
}

pub fn humbert_phi2(params: &HumbertParams, route: HumbertRoute) -> Result<f64, Error> {
    if params.betas.len() != params.xs.len() || params.betas.is_empty() {
        return Err(Error::Precondition(
            "Humbert function needs m >= 1 matching betas and arguments".into(),
        ));
    }
    match route {
        HumbertRoute::Series => {
            let xs: Vec<Complex64> = params.xs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            Ok(humbert_series(&params.betas, params.gamma, &xs)?.re)
        }
        HumbertRoute::Quadrature(order) => {
            humbert_quadrature(&params.betas, params.gamma, &params.xs, order)
        }
    }
}

/// Series evaluation, summed by total degree.
pub fn humbert_series(betas: &[f64], gamma: f64, xs: &[Complex64]) -> Result<Complex64, Error> {
    let m = betas.len();
    if m == 0 || xs.len() != m {
        return Err(Error::Precondition(
            "Humbert function needs m >= 1 matching betas and arguments".into(),
        ));
    }
    if gamma <= 0.0 && gamma.fract() == 0.0 {
        return Err(Error::Precondition(format!(
            "gamma must not be a non-positive integer, got {gamma}"
        )));
    }
    let radius: f64 = xs.iter().map(|x| x.norm()).sum();
    if !(radius <= SERIES_RADIUS) {
        return Err(Error::Precondition(format!(
            "series route needs sum |x_j| <= {SERIES_RADIUS}, got {radius}"
        )));
    }
    if radius == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    // Arguments are scaled by the radius X; the factor X^n / (gamma)_n is
    // carried separately so that neither part overflows.
    let scaled: Vec<Complex64> = xs.iter().map(|x| x / radius).collect();
    let mut univariate: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]; m];
    let mut partial: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]; m];
    let mut sum = Complex64::new(1.0, 0.0);
    let mut ratio = 1.0;
    let mut quiet = 0;
    for n in 1..=MAX_DEGREE {
        let nf = n as f64;
        ratio *= radius / (gamma + nf - 1.0);
        for i in 0..m {
            let prev = univariate[i][n - 1];
            univariate[i].push(prev * scaled[i] * ((betas[i] + nf - 1.0) / nf));
        }
        for i in 0..m {
            let value = if i == 0 {
                univariate[0][n]
            } else {
                let e = &univariate[i];
                let below = &partial[i - 1];
                (0..=n).map(|a| e[a] * below[n - a]).sum()
            };
            partial[i].push(value);
        }
        let block = partial[m - 1][n] * ratio;
        sum += block;
        if block.norm() < TAIL * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { terms: MAX_DEGREE })
}

/// `Gamma(gamma) / (Gamma(gamma - sum beta) prod Gamma(beta_j))`.
pub fn humbert_integral_constant(betas: &[f64], gamma: f64) -> f64 {
    let sb: f64 = betas.iter().sum();
    let log = lgamma(gamma) - lgamma(gamma - sb) - betas.iter().map(|&b| lgamma(b)).sum::<f64>();
    log.exp()
}

/// Simplex-integral evaluation; needs `beta_j > 0` and `gamma > sum beta`.
pub fn humbert_quadrature(betas: &[f64], gamma: f64, xs: &[f64], order: usize) -> Result<f64, Error> {
    let sb: f64 = betas.iter().sum();
    if betas.iter().any(|&b| !(b > 0.0)) || !(gamma - sb > 0.0) {
        return Err(Error::Precondition(format!(
            "integral route needs beta_j > 0 and gamma - sum beta > 0 (gamma = {gamma}, sum beta = {sb})"
        )));
    }
    let rule = cached_simplex(betas, gamma - sb, order)?;
    let c = humbert_integral_constant(betas, gamma);
    let value = rule.integrate(|t| t.iter().zip(xs).map(|(t, x)| t * x).sum::<f64>().exp());
    Ok(c * value)
}
