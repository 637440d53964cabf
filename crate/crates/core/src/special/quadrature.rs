//! Gauss-Jacobi and generalized Gauss-Laguerre rules, the beta measures
//! `dnu^alpha`, `dmu^gamma`, and Dirichlet-decomposed simplex rules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use libm::lgamma;
use nalgebra::{DMatrix, SymmetricEigen};

use crate::Error;

/// Which family a rule belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// `(1-x)^a (1+x)^b` on `[-1, 1]`, unnormalized.
    Jacobi { a: f64, b: f64 },
    /// Symmetric beta measure `c (1-u^2)^{alpha-1}`, mass 1.
    Nu { alpha: f64 },
    /// `c (1-u)^{gamma-1} (1+u)^gamma`, mass 1.
    Mu { gamma: f64 },
    /// `x^a e^{-x}` on `[0, inf)`.
    Laguerre { a: f64 },
}

/// Which beta measure [`jacobi_rule`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaVariant {
    Nu,
    Mu,
}

/// A one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// A rule on the unit simplex `T^m`; points are stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexRule {
    pub dim: usize,
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub exponents: Vec<f64>,
    pub delta: f64,
    pub order: usize,
}

impl SimplexRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        (0..self.len()).map(|i| self.weights[i] * f(self.point(i))).sum()
    }
}

/// `int_{T^m} prod t_j^{beta_j - 1} (1 - sum t)^{delta - 1} dt`.
pub fn dirichlet_mass(exponents: &[f64], delta: f64) -> f64 {
    let total: f64 = exponents.iter().sum::<f64>() + delta;
    let log = exponents.iter().map(|&b| lgamma(b)).sum::<f64>() + lgamma(delta) - lgamma(total);
    log.exp()
}

fn check_exponent(name: &str, x: f64, lower: f64) -> Result<(), Error> {
    if x.is_finite() && x > lower {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{name} must exceed {lower}, got {x}")))
    }
}

/// Gauss-Jacobi rule with `order` nodes for `(1-x)^a (1+x)^b` on `[-1, 1]`.
pub fn gauss_jacobi(order: usize, a: f64, b: f64) -> Result<QuadratureRule, Error> {
    check_exponent("Jacobi exponent a", a, -1.0)?;
    check_exponent("Jacobi exponent b", b, -1.0)?;
    if order == 0 {
        return Err(Error::Precondition("quadrature order must be >= 1".into()));
    }
    let n = order;
    let ab = a + b;
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let fi = i as f64;
        let denom = (2.0 * fi + ab) * (2.0 * fi + ab + 2.0);
        jm[(i, i)] = if i == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / denom
        };
        if i + 1 < n {
            let k = fi + 1.0;
            let s = 2.0 * k + ab;
            let beta = if k == 1.0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            jm[(i, i + 1)] = beta.sqrt();
            jm[(i + 1, i)] = beta.sqrt();
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jm).eigenvalues.iter().copied().collect();
    nodes.sort_by(|x, y| x.partial_cmp(y).expect("finite nodes"));
    let log_const = lgamma(n as f64 + a + 1.0) + lgamma(n as f64 + b + 1.0)
        - lgamma(n as f64 + ab + 1.0)
        - lgamma(n as f64 + 1.0)
        + (ab + 1.0) * std::f64::consts::LN_2;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = jacobi_with_derivative(n, a, b, *x);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *x = (*x - step).clamp(-1.0, 1.0);
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = jacobi_with_derivative(n, a, b, *x);
        weights.push((log_const - (1.0 - *x * *x).ln() - 2.0 * dp.abs().ln()).exp());
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::Jacobi { a, b },
    })
}

/// `P_n^{(a,b)}(x)` and its derivative.
pub fn jacobi_with_derivative(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let ab = a + b;
    let mut p0 = 1.0;
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p1 = (a + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let a3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let p2 = (a2 * p1 - a3 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let c = 2.0 * nf + ab;
    let dp = (nf * ((a - b) - c * x) * p1 + 2.0 * (nf + a) * (nf + b) * p0) / (c * (1.0 - x * x));
    (p1, dp)
}

/// `L_n^{(a)}(x)` and `L_{n-1}^{(a)}(x)`.
fn laguerre_pair(n: usize, a: f64, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Generalized Gauss-Laguerre rule for `x^a e^{-x}` on `[0, inf)`.
pub fn gauss_laguerre(order: usize, a: f64) -> Result<QuadratureRule, Error> {
    check_exponent("Laguerre exponent", a, -1.0)?;
    if order == 0 {
        return Err(Error::Precondition("quadrature order must be >= 1".into()));
    }
    let n = order;
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let fi = i as f64;
        jm[(i, i)] = 2.0 * fi + a + 1.0;
        if i + 1 < n {
            let off = ((fi + 1.0) * (fi + 1.0 + a)).sqrt();
            jm[(i, i + 1)] = off;
            jm[(i + 1, i)] = off;
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jm).eigenvalues.iter().copied().collect();
    nodes.sort_by(|x, y| x.partial_cmp(y).expect("finite nodes"));
    let nf = n as f64;
    let log_const = lgamma(nf + a + 1.0) - lgamma(nf + 1.0);
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (l, lm) = laguerre_pair(n, a, *x);
            let dl = (nf * l - (nf + a) * lm) / *x;
            let step = l / dl;
            if !step.is_finite() {
                break;
            }
            *x -= step;
            if step.abs() < 1e-16 * x.abs() {
                break;
            }
        }
        let (next, _) = laguerre_pair(n + 1, a, *x);
        weights.push((log_const + x.ln() - 2.0 * (nf + 1.0).ln() - 2.0 * next.abs().ln()).exp());
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::Laguerre { a },
    })
}

/// Normalizing constant `Gamma(alpha + 1/2) / (sqrt(pi) Gamma(alpha))`.
pub fn beta_measure_constant(alpha: f64) -> f64 {
    (lgamma(alpha + 0.5) - lgamma(alpha) - 0.5 * std::f64::consts::PI.ln()).exp()
}

/// Rule for `dnu^alpha` or `dmu^gamma`, both of mass 1.
pub fn jacobi_rule(param: f64, order: usize, variant: BetaVariant) -> Result<QuadratureRule, Error> {
    check_exponent("beta measure parameter", param, 0.0)?;
    let c = beta_measure_constant(param);
    let (a, b, kind) = match variant {
        BetaVariant::Nu => (param - 1.0, param - 1.0, RuleKind::Nu { alpha: param }),
        BetaVariant::Mu => (param - 1.0, param, RuleKind::Mu { gamma: param }),
    };
    let mut rule = gauss_jacobi(order, a, b)?;
    rule.weights.iter_mut().for_each(|w| *w *= c);
    rule.kind = kind;
    Ok(rule)
}

/// Rule on `T^m` for `prod t_j^{beta_j - 1} (1 - sum t)^{delta - 1} dt`.
///
/// With `t_1 = s_1`, `t_j = s_j prod_{i<j} (1 - s_i)` the weight factors
/// into `prod s_j^{beta_j - 1} (1 - s_j)^{B_j - 1}`, `B_j = sum_{i>j} beta_i + delta`.
pub fn simplex_rule(exponents: &[f64], delta: f64, order: usize) -> Result<SimplexRule, Error> {
    if exponents.is_empty() {
        return Err(Error::Precondition("simplex dimension must be >= 1".into()));
    }
    for &b in exponents {
        check_exponent("simplex exponent", b, 0.0)?;
    }
    check_exponent("simplex exponent delta", delta, 0.0)?;
    let m = exponents.len();
    let mut axes = Vec::with_capacity(m);
    for j in 0..m {
        let tail: f64 = exponents[j + 1..].iter().sum::<f64>() + delta;
        let rule = cached_jacobi(order, tail - 1.0, exponents[j] - 1.0)?;
        let scale = 0.5f64.powf(tail + exponents[j] - 1.0);
        let nodes: Vec<f64> = rule.nodes.iter().map(|x| 0.5 * (1.0 + x)).collect();
        let weights: Vec<f64> = rule.weights.iter().map(|w| w * scale).collect();
        axes.push((nodes, weights));
    }
    let total = order.pow(m as u32);
    let mut points = Vec::with_capacity(total * m);
    let mut weights = Vec::with_capacity(total);
    let mut idx = vec![0usize; m];
    for _ in 0..total {
        let mut remaining = 1.0;
        let mut w = 1.0;
        for j in 0..m {
            let s = axes[j].0[idx[j]];
            w *= axes[j].1[idx[j]];
            points.push(s * remaining);
            remaining *= 1.0 - s;
        }
        weights.push(w);
        for j in (0..m).rev() {
            idx[j] += 1;
            if idx[j] < order {
                break;
            }
            idx[j] = 0;
        }
    }
    Ok(SimplexRule {
        dim: m,
        points,
        weights,
        exponents: exponents.to_vec(),
        delta,
        order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum CacheKey {
    Jacobi(usize, u64, u64),
    Beta(usize, u64, bool),
    Laguerre(usize, u64),
    Simplex(usize, Vec<u64>, u64),
}

#[derive(Debug, Clone)]
enum Cached {
    Line(Arc<QuadratureRule>),
    Simplex(Arc<SimplexRule>),
}

fn cache() -> &'static Mutex<HashMap<CacheKey, Cached>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Cached>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_line(
    key: CacheKey,
    build: impl FnOnce() -> Result<QuadratureRule, Error>,
) -> Result<Arc<QuadratureRule>, Error> {
    if let Some(Cached::Line(r)) = cache().lock().expect("rule cache").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(build()?);
    cache()
        .lock()
        .expect("rule cache")
        .insert(key, Cached::Line(rule.clone()));
    Ok(rule)
}

/// Shared, memoized Gauss-Jacobi rule.
pub fn cached_jacobi(order: usize, a: f64, b: f64) -> Result<Arc<QuadratureRule>, Error> {
    cached_line(CacheKey::Jacobi(order, a.to_bits(), b.to_bits()), || {
        gauss_jacobi(order, a, b)
    })
}

/// Shared, memoized beta-measure rule.
pub fn cached_beta(param: f64, order: usize, variant: BetaVariant) -> Result<Arc<QuadratureRule>, Error> {
    let key = CacheKey::Beta(order, param.to_bits(), variant == BetaVariant::Mu);
    cached_line(key, || jacobi_rule(param, order, variant))
}

/// Shared, memoized Laguerre rule.
pub fn cached_laguerre(order: usize, a: f64) -> Result<Arc<QuadratureRule>, Error> {
    cached_line(CacheKey::Laguerre(order, a.to_bits()), || gauss_laguerre(order, a))
}

/// Shared, memoized simplex rule.
pub fn cached_simplex(exponents: &[f64], delta: f64, order: usize) -> Result<Arc<SimplexRule>, Error> {
    let key = CacheKey::Simplex(
        order,
        exponents.iter().map(|b| b.to_bits()).collect(),
        delta.to_bits(),
    );
    if let Some(Cached::Simplex(r)) = cache().lock().expect("rule cache").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(simplex_rule(exponents, delta, order)?);
    cache()
        .lock()
        .expect("rule cache")
        .insert(key, Cached::Simplex(rule.clone()));
    Ok(rule)
}
