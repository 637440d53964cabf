//! Closed-form dihedral kernels and the intertwining evaluators built on them.
//!
//! Every kernel here is an average over beta measures in `(u, v)` of a
//! Dirichlet expectation on a simplex. The expectation of an exponential is
//! a confluent Humbert function; the expectation of a power is a finite sum
//! of Dirichlet moments, which gives the reproducing kernels of `P_n`.

use std::f64::consts::PI;
use std::sync::Arc;

use libm::lgamma;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::config::Config;
use crate::dihedral::{DihedralGroup, PlanePoint};
use crate::oracle::{factorial, one_norm};
use crate::poly2::Poly2;
use crate::special::humbert::{humbert_series, SERIES_RADIUS};
use crate::special::integrand::{arccos_clamped, xi_uv, SimplexIntegrand};
use crate::special::quadrature::{cached_beta, cached_simplex, BetaVariant, QuadratureRule, RuleKind};
use crate::Error;

/// Tolerance of the invariance check in [`intertwine_invariant`].
pub const INVARIANCE_TOL: f64 = 1e-10;

/// What is averaged over the simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Functional {
    /// `exp(lambda <a, t>)`
    Exp(Complex64),
    /// `<a, t>^n / n!`
    Power(usize),
}

impl Functional {
    fn scalar(self, x: f64) -> Complex64 {
        match self {
            Functional::Exp(l) => (l * x).exp(),
            Functional::Power(n) => Complex64::new(x.powi(n as i32) / factorial(n as u32), 0.0),
        }
    }
}

const REAL: Functional = Functional::Exp(Complex64 { re: 1.0, im: 0.0 });

/// `dnu^param` or `dmu^param`; a zero parameter gives the weak limit
/// (`(delta_{-1} + delta_1) / 2` and `delta_1` respectively).
fn beta_rule(param: f64, order: usize, variant: BetaVariant) -> Result<Arc<QuadratureRule>, Error> {
    if param == 0.0 {
        let rule = match variant {
            BetaVariant::Nu => QuadratureRule {
                nodes: vec![-1.0, 1.0],
                weights: vec![0.5, 0.5],
                kind: RuleKind::Nu { alpha: 0.0 },
            },
            BetaVariant::Mu => QuadratureRule {
                nodes: vec![1.0],
                weights: vec![1.0],
                kind: RuleKind::Mu { gamma: 0.0 },
            },
        };
        return Ok(Arc::new(rule));
    }
    cached_beta(param, order, variant)
}

/// `(1+u)(1+v) - 2/(alpha+beta) (alpha u (1+v) + beta v (1+u))`, which is
/// nonnegative on `[-1, 1]^2`.
pub fn bracket(alpha: f64, beta: f64, u: f64, v: f64) -> f64 {
    (1.0 + u) * (1.0 + v) - 2.0 / (alpha + beta) * (alpha * u * (1.0 + v) + beta * v * (1.0 + u))
}

/// `E[exp(lambda <c, t>)]` for `t ~ Dirichlet(betas)` on the closed simplex.
/// The last coordinate is the eliminated one, so the series route is the
/// shifted `e^{lambda c_m} Phi_2^{(m)}(betas[..m]; sum betas; lambda (c_j - c_m))`.
fn dirichlet_exp(betas: &[f64], c: &[f64], lambda: Complex64, cfg: &Config) -> Result<Complex64, Error> {
    let m = betas.len() - 1;
    let last = c[m];
    let lead = (lambda * last).exp();
    if m == 0 {
        return Ok(lead);
    }
    let shifted: Vec<f64> = c[..m].iter().map(|x| x - last).collect();
    let radius = lambda.norm() * shifted.iter().map(|x| x.abs()).sum::<f64>();
    if radius == 0.0 {
        return Ok(lead);
    }
    if !cfg.use_quadrature(m) && radius <= SERIES_RADIUS {
        let total: f64 = betas.iter().sum();
        let xs: Vec<Complex64> = shifted.iter().map(|&x| lambda * x).collect();
        return Ok(lead * humbert_series(&betas[..m], total, &xs)?);
    }
    let rule = cached_simplex(&betas[..m], betas[m], cfg.simplex_order)?;
    let dot = |i: usize| -> f64 { rule.point(i).iter().zip(&shifted).map(|(t, x)| t * x).sum() };
    let sum = if lambda.im == 0.0 {
        let s: f64 = (0..rule.len()).map(|i| rule.weights[i] * (lambda.re * dot(i)).exp()).sum();
        Complex64::new(s, 0.0)
    } else {
        (0..rule.len()).map(|i| rule.weights[i] * (lambda * dot(i)).exp()).sum()
    };
    Ok(lead * sum / rule.mass())
}

/// `E[<c, t>^n] / n!` for `t ~ Dirichlet(betas)`, summed exactly from the
/// moments `E[prod t_j^{a_j}] = prod (beta_j)_{a_j} / (sum beta)_{|a|}`.
fn dirichlet_power(betas: &[f64], c: &[f64], n: usize) -> f64 {
    let mut conv = vec![0.0; n + 1];
    conv[0] = 1.0;
    let mut e = vec![0.0; n + 1];
    for (&b, &x) in betas.iter().zip(c) {
        e[0] = 1.0;
        for a in 1..=n {
            e[a] = e[a - 1] * (b + a as f64 - 1.0) * x / a as f64;
        }
        for top in (0..=n).rev() {
            conv[top] = (0..=top).map(|i| conv[i] * e[top - i]).sum();
        }
    }
    let total: f64 = betas.iter().sum();
    let poch: f64 = (0..n).map(|i| total + i as f64).product();
    conv[n] / poch
}

fn dirichlet_mean(betas: &[f64], c: &[f64], f: Functional, cfg: &Config) -> Result<Complex64, Error> {
    match f {
        Functional::Exp(l) => dirichlet_exp(betas, c, l, cfg),
        Functional::Power(n) => Ok(Complex64::new(dirichlet_power(betas, c, n), 0.0)),
    }
}

/// `h_gamma` with `a_j` from `q_{u,v}`: the simplex has `m` coordinates of
/// exponent `gamma` carrying `a_j` and one of exponent 1 carrying `a_k`.
fn h_gamma(
    z: &PlanePoint,
    w: &PlanePoint,
    u: f64,
    v: f64,
    m: usize,
    gamma: f64,
    f: Functional,
    cfg: &Config,
) -> Result<Complex64, Error> {
    let s = SimplexIntegrand::dunkl(z, w, u, v, m);
    let mut c = s.a;
    c.push(s.a_k.expect("dunkl integrand carries a_k"));
    let mut betas = vec![gamma; m];
    betas.push(1.0);
    dirichlet_mean(&betas, &c, f, cfg)
}

fn trivial_kernel(z: &PlanePoint, w: &PlanePoint, f: Functional) -> Complex64 {
    f.scalar(z.dot(w))
}

fn dunkl_core(g: &DihedralGroup, z: &PlanePoint, w: &PlanePoint, f: Functional, cfg: &Config) -> Result<Complex64, Error> {
    let kappa = g.kappa();
    if kappa.is_zero() {
        return Ok(trivial_kernel(z, w, f));
    }
    let order = cfg.uv_order;
    if !g.is_even() {
        let k = g.k();
        let alpha = kappa.alpha;
        let nu = beta_rule(alpha, order, BetaVariant::Nu)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (u, wu) in nu.iter() {
            if u == 1.0 {
                continue;
            }
            acc += wu * (1.0 - u) * h_gamma(z, w, u, 1.0, k, alpha, f, cfg)?;
        }
        return Ok(acc);
    }
    let kp = g.half_order();
    let (alpha, beta) = (kappa.alpha, kappa.beta);
    if kp == 1 {
        let mu_a = beta_rule(alpha, order, BetaVariant::Mu)?;
        let mu_b = beta_rule(beta, order, BetaVariant::Mu)?;
        let (p1, p2) = (z.x1() * w.x1(), z.x2() * w.x2());
        let mut acc = Complex64::new(0.0, 0.0);
        for (u, wu) in mu_a.iter() {
            for (v, wv) in mu_b.iter() {
                acc += wu * wv * f.scalar(v * p1 + u * p2);
            }
        }
        return Ok(acc);
    }
    let gamma = alpha + beta;
    let nu_a = beta_rule(alpha, order, BetaVariant::Nu)?;
    let nu_b = beta_rule(beta, order, BetaVariant::Nu)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (u, wu) in nu_a.iter() {
        for (v, wv) in nu_b.iter() {
            let br = bracket(alpha, beta, u, v);
            if br == 0.0 {
                continue;
            }
            acc += wu * wv * br * h_gamma(z, w, u, v, kp, gamma, f, cfg)?;
        }
    }
    Ok(acc)
}

/// The Dunkl kernel `E(z, w)`.
pub fn dunkl_kernel(g: &DihedralGroup, z: &PlanePoint, w: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    Ok(dunkl_core(g, z, w, REAL, cfg)?.re)
}

/// `E(lambda z, w)` for complex `lambda`, continued analytically in `|z|`.
pub fn dunkl_kernel_scaled(
    g: &DihedralGroup,
    z: &PlanePoint,
    w: &PlanePoint,
    lambda: Complex64,
    cfg: &Config,
) -> Result<Complex64, Error> {
    dunkl_core(g, z, w, Functional::Exp(lambda), cfg)
}

/// The even-group kernel through the two-term `dmu^alpha dmu^beta` form,
/// `h_gamma + 2^{1-k'} Gamma(k'gamma+1)/Gamma(k'(gamma+1)+1) |zw|^{k'}
/// xi_{u-1,v-1} h_{gamma+1}`.
pub fn dunkl_kernel_m2(g: &DihedralGroup, z: &PlanePoint, w: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    if !g.is_even() {
        return Err(Error::Precondition("the two-term form needs an even group".into()));
    }
    let kappa = g.kappa();
    if kappa.is_zero() {
        return Ok(z.dot(w).exp());
    }
    let kp = g.half_order();
    let kf = kp as f64;
    let gamma = kappa.alpha + kappa.beta;
    let coef = 2f64.powf(1.0 - kf)
        * (lgamma(kf * gamma + 1.0) - lgamma(kf * (gamma + 1.0) + 1.0)).exp()
        * (z.r() * w.r()).powi(kp as i32);
    let mu_a = beta_rule(kappa.alpha, cfg.uv_order, BetaVariant::Mu)?;
    let mu_b = beta_rule(kappa.beta, cfg.uv_order, BetaVariant::Mu)?;
    let (a1, a2) = (kf * z.phi(), kf * w.phi());
    let mut acc = 0.0;
    for (u, wu) in mu_a.iter() {
        for (v, wv) in mu_b.iter() {
            let mut value = h_gamma(z, w, u, v, kp, gamma, REAL, cfg)?.re;
            let xi = xi_uv(u - 1.0, v - 1.0, a1, a2);
            if xi != 0.0 && coef != 0.0 {
                value += coef * xi * h_gamma(z, w, u, v, kp, gamma + 1.0, REAL, cfg)?.re;
            }
            acc += wu * wv * value;
        }
    }
    Ok(acc)
}

fn bessel_core(g: &DihedralGroup, z: &PlanePoint, w: &PlanePoint, f: Functional, cfg: &Config) -> Result<Complex64, Error> {
    let kappa = g.kappa();
    if kappa.is_zero() || !g.is_even() {
        let elements = g.elements();
        let mut acc = Complex64::new(0.0, 0.0);
        for e in &elements {
            acc += dunkl_core(g, z, &w.transform(e), f, cfg)?;
        }
        return Ok(acc / elements.len() as f64);
    }
    let kp = g.half_order();
    let (alpha, beta) = (kappa.alpha, kappa.beta);
    let nu_a = beta_rule(alpha, cfg.uv_order, BetaVariant::Nu)?;
    let nu_b = beta_rule(beta, cfg.uv_order, BetaVariant::Nu)?;
    let mut acc = Complex64::new(0.0, 0.0);
    if kp == 1 {
        let (p1, p2) = (z.x1() * w.x1(), z.x2() * w.x2());
        for (u, wu) in nu_a.iter() {
            for (v, wv) in nu_b.iter() {
                let a = v * p1 + u * p2;
                acc += wu * wv * 0.5 * (f.scalar(a) + f.scalar(-a));
            }
        }
        return Ok(acc);
    }
    let lambda = alpha + beta;
    let betas = vec![lambda; kp];
    for (u, wu) in nu_a.iter() {
        for (v, wv) in nu_b.iter() {
            let mut both = Complex64::new(0.0, 0.0);
            for minus in [false, true] {
                // a_0 goes last: it is the coordinate eliminated on T^{k'-1}.
                let mut c = SimplexIntegrand::bessel(z, w, u, v, kp, minus).a;
                c.rotate_left(1);
                both += dirichlet_mean(&betas, &c, f, cfg)?;
            }
            acc += wu * wv * 0.5 * both;
        }
    }
    Ok(acc)
}

/// The generalized Bessel function `J(z, w) = |G|^{-1} sum_g E(z, g w)`.
///
/// Even groups use the closed simplex form; odd groups average the kernel.
pub fn generalized_bessel(g: &DihedralGroup, z: &PlanePoint, w: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    Ok(bessel_core(g, z, w, REAL, cfg)?.re)
}

/// `J(lambda z, w)` for complex `lambda`.
pub fn generalized_bessel_scaled(
    g: &DihedralGroup,
    z: &PlanePoint,
    w: &PlanePoint,
    lambda: Complex64,
    cfg: &Config,
) -> Result<Complex64, Error> {
    bessel_core(g, z, w, Functional::Exp(lambda), cfg)
}

/// Degree-`n` component `V(<., w>^n / n!)(z)` of the Dunkl kernel.
pub fn repker_pn(g: &DihedralGroup, n: usize, z: &PlanePoint, w: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    if n == 0 {
        return Ok(1.0);
    }
    Ok(dunkl_core(g, z, w, Functional::Power(n), cfg)?.re)
}

/// Degree-`n` component of the generalized Bessel function.
pub fn bessel_repker_pn(g: &DihedralGroup, n: usize, z: &PlanePoint, w: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    Ok(bessel_core(g, z, w, Functional::Power(n), cfg)?.re)
}

/// `prod_{l < m} (s - |zw| cos((q + 2 pi l) / m))`.
fn laplace_factor(s: f64, zw: f64, q: f64, m: usize) -> f64 {
    (0..m)
        .map(|l| s - zw * ((q + 2.0 * PI * l as f64) / m as f64).cos())
        .product()
}

struct LaplaceSetup {
    /// `m = k'` for even groups, `k` for odd ones.
    m: usize,
    gamma: f64,
    zw: f64,
    a1: f64,
    a2: f64,
    /// `A(q_{1,1}) / B`
    ratio: f64,
    log_gamma: f64,
}

fn laplace_setup(g: &DihedralGroup, z: &PlanePoint, w: &PlanePoint, s: f64) -> Result<LaplaceSetup, Error> {
    let zw = z.r() * w.r();
    if !(s > zw) {
        return Err(Error::Precondition(format!("need s > |z||w| = {zw}, got s = {s}")));
    }
    let kappa = g.kappa();
    let (m, gamma) = if g.is_even() {
        (g.half_order(), kappa.alpha + kappa.beta)
    } else {
        (g.k(), kappa.alpha)
    };
    let mf = m as f64;
    let (a1, a2) = (mf * z.phi(), mf * w.phi());
    let q11 = arccos_clamped(xi_uv(1.0, 1.0, a1, a2));
    let ratio = laplace_factor(s, zw, q11, m) / (s - z.dot(w));
    Ok(LaplaceSetup {
        m,
        gamma,
        zw,
        a1,
        a2,
        ratio,
        log_gamma: lgamma(mf * gamma + 1.0),
    })
}

/// Laplace transform in `t` of `t^{k'gamma} E(t z, w)` at real `s > |z||w|`,
/// `Gamma(k'gamma+1) int int A(q_{1,1}) / (B A(q_{u,v})^{gamma+1}) dmu^alpha dmu^beta`
/// with `B = s - Re(z conj w)` and `A` in factored form. Odd groups use
/// `dmu^alpha(u)` at `v = 1`.
pub fn dunkl_kernel_laplace(g: &DihedralGroup, z: &PlanePoint, w: &PlanePoint, s: f64, cfg: &Config) -> Result<f64, Error> {
    let st = laplace_setup(g, z, w, s)?;
    if g.kappa().is_zero() {
        return Ok(1.0 / (s - z.dot(w)));
    }
    let kappa = g.kappa();
    let mu_a = beta_rule(kappa.alpha, cfg.uv_order, BetaVariant::Mu)?;
    let mu_b = if g.is_even() {
        beta_rule(kappa.beta, cfg.uv_order, BetaVariant::Mu)?
    } else {
        beta_rule(0.0, 1, BetaVariant::Mu)?
    };
    let mut acc = 0.0;
    for (u, wu) in mu_a.iter() {
        for (v, wv) in mu_b.iter() {
            let q = arccos_clamped(xi_uv(u, v, st.a1, st.a2));
            acc += wu * wv * laplace_factor(s, st.zw, q, st.m).powf(-(st.gamma + 1.0));
        }
    }
    Ok(st.log_gamma.exp() * st.ratio * acc)
}

/// The same transform split by parts:
/// `Gamma(k'gamma+1) int int bracket / (B A(q_{u,v})^gamma) dnu^alpha dnu^beta`,
/// and `(1 - u) dnu^alpha(u)` at `v = 1` for odd groups.
pub fn dunkl_kernel_laplace_bracket(
    g: &DihedralGroup,
    z: &PlanePoint,
    w: &PlanePoint,
    s: f64,
    cfg: &Config,
) -> Result<f64, Error> {
    let st = laplace_setup(g, z, w, s)?;
    let kappa = g.kappa();
    let b = s - z.dot(w);
    if kappa.is_zero() {
        return Ok(1.0 / b);
    }
    let nu_a = beta_rule(kappa.alpha, cfg.uv_order, BetaVariant::Nu)?;
    let mut acc = 0.0;
    if g.is_even() {
        let nu_b = beta_rule(kappa.beta, cfg.uv_order, BetaVariant::Nu)?;
        for (u, wu) in nu_a.iter() {
            for (v, wv) in nu_b.iter() {
                let q = arccos_clamped(xi_uv(u, v, st.a1, st.a2));
                let br = bracket(kappa.alpha, kappa.beta, u, v);
                acc += wu * wv * br * laplace_factor(s, st.zw, q, st.m).powf(-st.gamma);
            }
        }
    } else {
        for (u, wu) in nu_a.iter() {
            let q = arccos_clamped(xi_uv(u, 1.0, st.a1, st.a2));
            acc += wu * (1.0 - u) * laplace_factor(s, st.zw, q, st.m).powf(-st.gamma);
        }
    }
    Ok(st.log_gamma.exp() * acc / b)
}

/// Closed form of the odd-group transform at `w = e^{i p pi / k}`:
/// `Gamma(k alpha + 1) / ((s - a_0)^{alpha+1} prod_{j>=1} (s - a_j)^alpha)`
/// with `a_j = |z| cos(phi_1 - p pi / k - 2 pi j / k)`.
pub fn laplace_special_point(g: &DihedralGroup, z: &PlanePoint, p: usize, s: f64) -> Result<f64, Error> {
    if g.is_even() {
        return Err(Error::Precondition("the special-point form needs an odd group".into()));
    }
    if !(s > z.r()) {
        return Err(Error::Precondition(format!("need s > |z| = {}, got s = {s}", z.r())));
    }
    let k = g.k();
    let kf = k as f64;
    let alpha = g.kappa().alpha;
    let mut log = lgamma(kf * alpha + 1.0);
    for j in 0..k {
        let a = z.r() * (z.phi() - p as f64 * PI / kf - 2.0 * PI * j as f64 / kf).cos();
        let e = if j == 0 { alpha + 1.0 } else { alpha };
        log -= e * (s - a).ln();
    }
    Ok(log.exp())
}

/// Writes a homogeneous `p_n` as `sum_l c_l <x, d_l>^n` with
/// `d_l = (cos(l pi/(n+1)), sin(l pi/(n+1)))`.
pub fn linear_form_decomposition(pn: &Poly2, n: u32, max_condition: f64) -> Result<Vec<(PlanePoint, f64)>, Error> {
    let size = n as usize + 1;
    let dirs: Vec<PlanePoint> = (0..size)
        .map(|l| PlanePoint::from_polar(1.0, l as f64 * PI / size as f64))
        .collect();
    let mut mat = DMatrix::zeros(size, size);
    for (l, d) in dirs.iter().enumerate() {
        let form = Poly2::linear_form_power(d.coords(), n);
        for m in 0..size {
            mat[(m, l)] = form.coeff(n - m as u32, m as u32);
        }
    }
    let inv = mat
        .clone()
        .try_inverse()
        .ok_or(Error::IllConditioned { cond: f64::INFINITY })?;
    let cond = one_norm(&mat) * one_norm(&inv);
    if !cond.is_finite() || cond > max_condition {
        return Err(Error::IllConditioned { cond });
    }
    let rhs = DVector::from_iterator(size, (0..size).map(|m| pn.coeff(n - m as u32, m as u32)));
    let c = inv * rhs;
    Ok(dirs.into_iter().zip(c.iter().copied()).collect())
}

/// `V p` at `z`, from the reproducing kernels of `P_n` and a decomposition
/// of each homogeneous part into powers of linear forms.
pub fn intertwine_general(g: &DihedralGroup, p: &Poly2, z: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    let mut total = 0.0;
    for (n, pn) in p.homogeneous_parts() {
        if n == 0 {
            total += pn.coeff(0, 0);
            continue;
        }
        let nfact = factorial(n);
        for (d, c) in linear_form_decomposition(&pn, n, cfg.max_condition)? {
            if c != 0.0 {
                total += c * nfact * repker_pn(g, n as usize, z, &d, cfg)?;
            }
        }
    }
    Ok(total)
}

/// Fails unless `p` is invariant under every reflection of `g`.
pub fn check_invariant(g: &DihedralGroup, p: &Poly2) -> Result<(), Error> {
    let scale = p.max_abs_coeff().max(1.0);
    for r in g.reflections() {
        let diff = p.compose_linear(r).max_abs_diff(p);
        if diff > INVARIANCE_TOL * scale {
            return Err(Error::Precondition(format!(
                "polynomial is not invariant under {} (deviation {diff:.3e})",
                g.name()
            )));
        }
    }
    Ok(())
}

/// `V p` at `z` for a `G`-invariant `p`; for `I_2` the double-beta form
/// `int int p(v x_1, u x_2) dnu^alpha(u) dnu^beta(v)` is evaluated as well
/// and must agree.
pub fn intertwine_invariant(g: &DihedralGroup, p: &Poly2, z: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    if !g.is_even() {
        return Err(Error::Precondition("invariant intertwining needs an even group".into()));
    }
    check_invariant(g, p)?;
    let value = intertwine_general(g, p, z, cfg)?;
    if g.k() == 2 {
        let closed = intertwine_i2_closed(g, p, z, cfg)?;
        debug_assert!(
            (closed - value).abs() <= 1e-8 * value.abs().max(1.0),
            "closed {closed} vs general {value}"
        );
    }
    Ok(value)
}

/// `int int p(v z_1, u z_2) dnu^alpha(u) dnu^beta(v)` for `I_2`-invariant `p`.
pub fn intertwine_i2_closed(g: &DihedralGroup, p: &Poly2, z: &PlanePoint, cfg: &Config) -> Result<f64, Error> {
    if g.k() != 2 {
        return Err(Error::Precondition("the double-beta form is for I2".into()));
    }
    check_invariant(g, p)?;
    let order = cfg.uv_order.max(p.degree().unwrap_or(0) as usize / 2 + 1);
    let kappa = g.kappa();
    let nu_a = beta_rule(kappa.alpha, order, BetaVariant::Nu)?;
    let nu_b = beta_rule(kappa.beta, order, BetaVariant::Nu)?;
    let mut acc = 0.0;
    for (u, wu) in nu_a.iter() {
        for (v, wv) in nu_b.iter() {
            acc += wu * wv * p.eval(v * z.x1(), u * z.x2());
        }
    }
    Ok(acc)
}

/// `V p` on the line `r e^{i q pi / k}` of an odd group:
/// `c_{alpha,k} int_{T^{k-1}} p(sum_j r e^{i(q-2j)pi/k} t_j) t_0^alpha prod_{j>=1} t_j^{alpha-1} dt`
/// with `c_{alpha,k} = Gamma(k alpha + 1) / (alpha Gamma(alpha)^k)`.
pub fn xu_line(g: &DihedralGroup, p: &Poly2, r: f64, q_index: usize, cfg: &Config) -> Result<f64, Error> {
    let k = g.k();
    if g.is_even() || k < 3 {
        return Err(Error::Precondition(format!("need an odd group of order k >= 3, got {}", g.name())));
    }
    if q_index >= 2 * k {
        return Err(Error::Precondition(format!("q_index must be < {}, got {q_index}", 2 * k)));
    }
    if !(r >= 0.0) {
        return Err(Error::Precondition(format!("r must be >= 0, got {r}")));
    }
    let alpha = g.kappa().alpha;
    if !(alpha > 0.0) {
        return Err(Error::Precondition("alpha must be positive".into()));
    }
    let deg = p.degree().unwrap_or(0) as usize;
    let order = (deg / 2 + 2).max(cfg.simplex_order.min(4));
    let rule = cached_simplex(&vec![alpha; k - 1], alpha + 1.0, order)?;
    let kf = k as f64;
    let dirs: Vec<(f64, f64)> = (0..k)
        .map(|j| {
            let theta = (q_index as f64 - 2.0 * j as f64) * PI / kf;
            (r * theta.cos(), r * theta.sin())
        })
        .collect();
    let mut acc = 0.0;
    for i in 0..rule.len() {
        let t = rule.point(i);
        let t0 = 1.0 - t.iter().sum::<f64>();
        let (mut x1, mut x2) = (dirs[0].0 * t0, dirs[0].1 * t0);
        for (tj, d) in t.iter().zip(&dirs[1..]) {
            x1 += d.0 * tj;
            x2 += d.1 * tj;
        }
        acc += rule.weights[i] * p.eval(x1, x2);
    }
    let c = (lgamma(kf * alpha + 1.0) - alpha.ln() - kf * lgamma(alpha)).exp();
    Ok(c * acc)
}
