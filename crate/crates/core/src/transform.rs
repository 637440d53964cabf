//! Gaussian integrals against the weight `omega_kappa` and a desk-scale
//! Dunkl transform.
//!
//! Both use a polar grid: a radial Gauss rule times a Gauss-Jacobi rule on
//! each sector between consecutive mirrors, whose endpoint exponents absorb
//! the `|<root, x>|^{2 kappa}` cusps of the weight.

use std::f64::consts::PI;

use libm::lgamma;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::Config;
use crate::dihedral::{DihedralGroup, PlanePoint};
use crate::dunklops::DunklContext;
use crate::kernels::{dunkl_kernel, dunkl_kernel_scaled};
use crate::poly2::Poly2;
use crate::special::quadrature::{cached_jacobi, cached_laguerre};
use crate::Error;

/// Smallest truncation radius accepted by [`dunkl_transform`].
pub const MIN_RADIUS: f64 = 8.0;

/// Nodes `theta` and weights for `int_0^{2 pi} F(theta) omega(theta) d theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularRule {
    pub angles: Vec<f64>,
    pub weights: Vec<f64>,
}

impl AngularRule {
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Multiplicity of the mirror through angle `theta`.
fn mirror_multiplicity(g: &DihedralGroup, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let root = g
        .roots()
        .iter()
        .min_by(|a, b| {
            let da = (a.vector[0] * c + a.vector[1] * s).abs();
            let db = (b.vector[0] * c + b.vector[1] * s).abs();
            da.total_cmp(&db)
        })
        .expect("a dihedral group has roots");
    g.multiplicity(root.orbit)
}

/// Sectored Gauss-Jacobi rule on the unit circle with the weight folded in.
pub fn angular_rule(g: &DihedralGroup, order: usize) -> Result<AngularRule, Error> {
    let k = g.k();
    let h = PI / k as f64;
    let mut angles = Vec::with_capacity(2 * k * order);
    let mut weights = Vec::with_capacity(2 * k * order);
    for j in 0..2 * k {
        let left = j as f64 * h;
        let right = left + h;
        let e_left = 2.0 * mirror_multiplicity(g, left);
        let e_right = 2.0 * mirror_multiplicity(g, right);
        let rule = cached_jacobi(order, e_right, e_left)?;
        let scale = (0.5 * h).powf(1.0 + e_left + e_right);
        for (x, w) in rule.iter() {
            let theta = left + 0.5 * h * (1.0 + x);
            let cusp = (right - theta).powf(e_right) * (theta - left).powf(e_left);
            let smooth = g.weight(&PlanePoint::from_polar(1.0, theta)) / cusp;
            angles.push(theta);
            weights.push(scale * w * smooth);
        }
    }
    Ok(AngularRule { angles, weights })
}

/// `c_kappa = int e^{-|x|^2/2} omega_kappa(x) dx`.
pub fn macdonald_constant(g: &DihedralGroup, cfg: &Config) -> Result<f64, Error> {
    let gamma = g.gamma();
    // r dr = d tau with tau = r^2 / 2 turns the radial part into
    // 2^gamma int tau^gamma e^{-tau}, which the Laguerre rule integrates
    // exactly; its closed form avoids the rounding in the summed weights.
    let radial = 2f64.powf(gamma) * lgamma(gamma + 1.0).exp();
    Ok(radial * angular_rule(g, cfg.angular_order)?.mass())
}

/// `c_kappa^{-1} int f(x) e^{-|x|^2/2} omega_kappa(x) dx` for a smooth `f` of
/// at most exponential growth.
///
/// The angular rule is symmetric under `x -> -x`, so each radial node sees
/// `(f(x) + f(-x)) / 2`, which is smooth in `tau = r^2 / 2`.
pub fn gaussian_average<F>(g: &DihedralGroup, cfg: &Config, f: F) -> Result<Complex64, Error>
where
    F: Fn(&PlanePoint) -> Result<Complex64, Error> + Sync,
{
    let nodes = polar_nodes(g, cfg)?;
    let values: Vec<Complex64> = nodes
        .par_iter()
        .map(|(x, w)| Ok(w * f(x)?))
        .collect::<Result<_, Error>>()?;
    let mass: f64 = nodes.iter().map(|(_, w)| w).sum();
    Ok(values.iter().sum::<Complex64>() / mass)
}

/// `c_kappa^{-1} int_{|x| <= R} E(-i x, y) f(x) omega_kappa(x) dx`.
pub fn dunkl_transform<F>(g: &DihedralGroup, f: F, y: &PlanePoint, radius: f64, cfg: &Config) -> Result<Complex64, Error>
where
    F: Fn(&PlanePoint) -> f64 + Sync,
{
    if !(radius >= MIN_RADIUS) {
        return Err(Error::Precondition(format!(
            "truncation radius must be >= {MIN_RADIUS}, got {radius}"
        )));
    }
    let gamma = g.gamma();
    let c = macdonald_constant(g, cfg)?;
    // r^{1 + 2 gamma} on [0, R] from (1 + x)^{1 + 2 gamma} on [-1, 1].
    let rule = cached_jacobi(cfg.radial_order, 0.0, 1.0 + 2.0 * gamma)?;
    let scale = (0.5 * radius).powf(2.0 + 2.0 * gamma);
    let angular = angular_rule(g, cfg.angular_order)?;
    let minus_i = Complex64::new(0.0, -1.0);
    let rows: Vec<Complex64> = rule
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(x, w)| -> Result<Complex64, Error> {
            let r = 0.5 * radius * (1.0 + x);
            let mut acc = Complex64::new(0.0, 0.0);
            for (&theta, &wt) in angular.angles.iter().zip(&angular.weights) {
                let p = PlanePoint::from_polar(r, theta);
                let fx = f(&p);
                if fx != 0.0 {
                    acc += wt * fx * dunkl_kernel_scaled(g, &p, y, minus_i, cfg)?;
                }
            }
            Ok(scale * w * acc)
        })
        .collect::<Result<_, _>>()?;
    Ok(rows.iter().sum::<Complex64>() / c)
}

/// Left-hand sides `c_kappa^{-1} int (e^{-Delta/2} p)(x) E(x, y) e^{-|x|^2/2} omega dx`
/// for several `p` at once, sharing kernel evaluations.
pub fn heat_pairing(g: &DihedralGroup, ps: &[Poly2], y: &PlanePoint, cfg: &Config) -> Result<Vec<f64>, Error> {
    let ctx = DunklContext::new(g.clone());
    let smoothed: Vec<Poly2> = ps
        .iter()
        .map(|p| ctx.heat_semigroup(0.5, p))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(ps.len());
    let nodes = polar_nodes(g, cfg)?;
    let kernel: Vec<f64> = nodes
        .par_iter()
        .map(|(x, _)| dunkl_kernel(g, x, y, cfg))
        .collect::<Result<_, _>>()?;
    let mass: f64 = nodes.iter().map(|(_, w)| w).sum();
    for q in &smoothed {
        let total: f64 = nodes
            .iter()
            .zip(&kernel)
            .map(|((x, w), e)| w * q.eval_at(x) * e)
            .sum();
        out.push(total / mass);
    }
    Ok(out)
}

/// Right-hand side `e^{|y|^2 / 2} p(y)`.
pub fn heat_pairing_expected(p: &Poly2, y: &PlanePoint) -> f64 {
    (0.5 * y.r() * y.r()).exp() * p.eval_at(y)
}

/// Gaussian-weighted polar nodes: `sum_i w_i f(x_i) ~ int f e^{-|x|^2/2} omega dx`
/// up to a common factor. Nodes of negligible radial weight are dropped.
fn polar_nodes(g: &DihedralGroup, cfg: &Config) -> Result<Vec<(PlanePoint, f64)>, Error> {
    let radial = cached_laguerre(cfg.radial_order, g.gamma())?;
    let angular = angular_rule(g, cfg.angular_order)?;
    let floor = 1e-30 * radial.mass();
    let mut nodes = Vec::new();
    for (tau, wr) in radial.iter() {
        if wr < floor {
            continue;
        }
        let r = (2.0 * tau).sqrt();
        for (&theta, &wt) in angular.angles.iter().zip(&angular.weights) {
            nodes.push((PlanePoint::from_polar(r, theta), wr * wt));
        }
    }
    Ok(nodes)
}

/// Right-hand side of the Macdonald identity,
/// `c_kappa^{-1} int (e^{-Delta/2} p)(e^{-Delta/2} q) e^{-|x|^2/2} omega dx`.
pub fn macdonald_integral(g: &DihedralGroup, p: &Poly2, q: &Poly2, cfg: &Config) -> Result<f64, Error> {
    let ctx = DunklContext::new(g.clone());
    let hp = ctx.heat_semigroup(0.5, p)?;
    let hq = ctx.heat_semigroup(0.5, q)?;
    let nodes = polar_nodes(g, cfg)?;
    let mass: f64 = nodes.iter().map(|(_, w)| w).sum();
    let total: f64 = nodes.iter().map(|(x, w)| w * hp.eval_at(x) * hq.eval_at(x)).sum();
    Ok(total / mass)
}
