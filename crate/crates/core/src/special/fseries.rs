//! The dihedral series `f_{2k,lambda}(b, xi, t)` and its Laplace transform.
//!
//! `f = Gamma(k lambda + 1) (2/b)^{k lambda}
//!      sum_j (j + lambda)/lambda I_{k(j+lambda)}(b t) C_j^{(lambda)}(xi)`.

use std::f64::consts::PI;

use libm::lgamma;

use super::bessel::gegenbauer_all;
use super::humbert::{humbert_phi2, HumbertParams, HumbertRoute};
use super::integrand::{arccos_clamped, SimplexIntegrand};
use crate::Error;

const TAIL: f64 = 1e-18;
const MAX_INDEX: usize = 4000;

fn check(k: usize, lambda: f64, b: f64, xi: f64) -> Result<(), Error> {
    if k < 2 {
        return Err(Error::Precondition(format!("k must be >= 2, got {k}")));
    }
    if !(lambda > 0.0) {
        return Err(Error::Precondition(format!("lambda must be positive, got {lambda}")));
    }
    if !(b >= 0.0) || !(-1.0..=1.0).contains(&xi) {
        return Err(Error::Precondition(format!(
            "need b >= 0 and xi in [-1, 1], got b = {b}, xi = {xi}"
        )));
    }
    Ok(())
}

/// `f_{2k,lambda}(b, xi, t) / t^{k lambda}`, which is entire in `t`.
pub fn f_series_reduced(k: usize, lambda: f64, b: f64, xi: f64, t: f64) -> Result<f64, Error> {
    check(k, lambda, b, xi)?;
    let x = b * t / 2.0;
    if x == 0.0 {
        return Ok(1.0);
    }
    let kf = k as f64;
    let kl = kf * lambda;
    let lg_kl = lgamma(kl + 1.0);
    let ln_x = x.ln();
    let x2 = x * x;
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut c_prev = 0.0;
    let mut c_cur = 1.0;
    // C_j(1) bounds |C_j(xi)| for lambda > 0.
    let mut bound_at_one = 1.0;
    for j in 0..MAX_INDEX {
        let jf = j as f64;
        if j == 1 {
            c_prev = 1.0;
            c_cur = 2.0 * lambda * xi;
            bound_at_one = 2.0 * lambda;
        } else if j >= 2 {
            let next = (2.0 * xi * (jf + lambda - 1.0) * c_cur - (jf + 2.0 * lambda - 2.0) * c_prev) / jf;
            c_prev = c_cur;
            c_cur = next;
            bound_at_one *= (jf + 2.0 * lambda - 1.0) / jf;
        }
        let nu = kf * (jf + lambda);
        let lead = ((jf + lambda) / lambda) * (lg_kl + kf * jf * ln_x - lgamma(nu + 1.0)).exp();
        let mut term = 1.0;
        let mut inner = 1.0;
        for n in 1..10_000 {
            let nf = n as f64;
            term *= x2 / (nf * (nf + nu));
            inner += term;
            if term < TAIL * inner {
                break;
            }
        }
        sum += lead * c_cur * inner;
        if lead * bound_at_one * inner < TAIL * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { terms: MAX_INDEX })
}

/// `f_{2k,lambda}(b, xi, t)` by the Gegenbauer-Bessel series.
pub fn f_series(k: usize, lambda: f64, b: f64, xi: f64, t: f64) -> Result<f64, Error> {
    if !(t >= 0.0) {
        return Err(Error::Precondition(format!("t must be >= 0, got {t}")));
    }
    let reduced = f_series_reduced(k, lambda, b, xi, t)?;
    Ok(t.powf(k as f64 * lambda) * reduced)
}

/// Same series with explicit Bessel and Gegenbauer calls, kept as a
/// transparent reference for small arguments.
pub fn f_series_reference(k: usize, lambda: f64, b: f64, xi: f64, t: f64, terms: usize) -> f64 {
    let kl = k as f64 * lambda;
    let c = gegenbauer_all(terms, lambda, xi);
    let mut sum = 0.0;
    for (j, cj) in c.iter().enumerate() {
        let nu = k as f64 * (j as f64 + lambda);
        sum += (j as f64 + lambda) / lambda * super::bessel::bessel_i(nu, b * t) * cj;
    }
    lgamma(kl + 1.0).exp() * (2.0 / b).powf(kl) * sum
}

/// `f_{2k,lambda}(b, xi, 1) = e^{b_0} Phi_2^{(k-1)}(lambda..; k lambda; b_j - b_0)`.
pub fn f_humbert(k: usize, lambda: f64, b: f64, xi: f64, route: HumbertRoute) -> Result<f64, Error> {
    check(k, lambda, b, xi)?;
    let bj = SimplexIntegrand::series(b, xi, k).a;
    let xs: Vec<f64> = bj[1..].iter().map(|x| x - bj[0]).collect();
    let params = HumbertParams::new(vec![lambda; k - 1], k as f64 * lambda, xs);
    Ok(bj[0].exp() * humbert_phi2(&params, route)?)
}

/// `f_{2k,lambda}(b, xi, 1) = Phi_2^{(k)}(lambda..; k lambda; b_0..b_{k-1})`,
/// necessarily by series.
pub fn f_humbert_symmetric(k: usize, lambda: f64, b: f64, xi: f64) -> Result<f64, Error> {
    check(k, lambda, b, xi)?;
    let bj = SimplexIntegrand::series(b, xi, k).a;
    humbert_phi2(&HumbertParams::new(vec![lambda; k], k as f64 * lambda, bj), HumbertRoute::Series)
}

/// Expanded and factored forms of `(S+s)^k - 2 b^k xi + (s-S)^k`.
pub fn f_laplace_denominators(k: usize, b: f64, xi: f64, s: f64) -> (f64, f64) {
    let big_s = (s * s - b * b).sqrt();
    let expanded = (big_s + s).powi(k as i32) - 2.0 * b.powi(k as i32) * xi + (s - big_s).powi(k as i32);
    let q = arccos_clamped(xi);
    let factored = 2f64.powi(k as i32)
        * (0..k)
            .map(|l| s - b * ((q - 2.0 * PI * l as f64) / k as f64).cos())
            .product::<f64>();
    (expanded, factored)
}

/// Laplace transform of `t -> f_{2k,lambda}(b, xi, t)` at real `s > b`.
pub fn f_laplace(k: usize, lambda: f64, b: f64, xi: f64, s: f64) -> Result<f64, Error> {
    check(k, lambda, b, xi)?;
    if !(s > b) {
        return Err(Error::Precondition(format!("need s > b, got s = {s}, b = {b}")));
    }
    let kl = k as f64 * lambda;
    let big_s = (s * s - b * b).sqrt();
    let (den, _) = f_laplace_denominators(k, b, xi, s);
    let num = ((big_s + s).powi(k as i32) - (s - big_s).powi(k as i32)) / big_s;
    Ok(lgamma(kl + 1.0).exp() * 2f64.powf(kl) * num / den.powf(lambda + 1.0))
}

/// Laplace transform by generalized Gauss-Laguerre quadrature of the series,
/// substituting `tau = s t` and absorbing `t^{k lambda}` into the weight.
pub fn f_numeric_laplace(
    k: usize,
    lambda: f64,
    b: f64,
    xi: f64,
    s: f64,
    nodes: usize,
) -> Result<f64, Error> {
    check(k, lambda, b, xi)?;
    if !(s > b) {
        return Err(Error::Precondition(format!("need s > b, got s = {s}, b = {b}")));
    }
    let kl = k as f64 * lambda;
    let rule = super::quadrature::cached_laguerre(nodes, kl)?;
    let mut total = 0.0;
    for (tau, w) in rule.iter() {
        total += w * f_series_reduced(k, lambda, b, xi, tau / s)?;
    }
    Ok(total / s.powf(kl + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_b_gives_one() {
        for k in 2..=5 {
            assert_eq!(f_series(k, 0.8, 0.0, 0.3, 1.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn fused_series_matches_reference() {
        for &(k, lambda, b, xi, t) in &[(2, 1.0, 1.0, 0.3, 1.0), (3, 0.6, 2.0, -0.8, 0.7), (4, 1.7, 0.5, 0.0, 2.0)] {
            let fused = f_series(k, lambda, b, xi, t).unwrap();
            let reference = f_series_reference(k, lambda, b, xi, t, 60);
            assert!((fused - reference).abs() < 1e-13 * reference.abs(), "{fused} {reference}");
        }
    }

    #[test]
    fn series_and_humbert_routes_agree() {
        let s = f_series(2, 1.0, 1.0, 0.3, 1.0).unwrap();
        let h = f_humbert(2, 1.0, 1.0, 0.3, HumbertRoute::Quadrature(24)).unwrap();
        let hs = f_humbert(2, 1.0, 1.0, 0.3, HumbertRoute::Series).unwrap();
        assert!((s - h).abs() < 1e-10, "{s} {h}");
        assert!((s - hs).abs() < 1e-12);
    }

    #[test]
    fn denominators_agree() {
        let (e, f) = f_laplace_denominators(3, 1.0, 0.4, 1.5);
        assert!((e - f).abs() < 1e-12 * e.abs());
    }

    #[test]
    fn laplace_limits() {
        let (k, lambda) = (3, 0.8);
        let kl = k as f64 * lambda;
        let g = lgamma(kl + 1.0).exp();
        let s: f64 = 1e4;
        let v = f_laplace(k, lambda, 1.0, 0.2, s).unwrap() * s.powf(kl + 1.0);
        assert!((v - g).abs() < 1e-3 * g);
        let z = f_laplace(k, lambda, 0.0, 0.2, 2.0).unwrap();
        assert!((z - g / 2f64.powf(kl + 1.0)).abs() < 1e-14);
        assert!(f_laplace(k, lambda, 1.0, 0.2, 1.0).is_err());
    }

    #[test]
    fn numeric_laplace_matches_closed_form() {
        let num = f_numeric_laplace(2, 0.8, 1.0, 0.7, 2.0, 80).unwrap();
        let closed = f_laplace(2, 0.8, 1.0, 0.7, 2.0).unwrap();
        assert!((num - closed).abs() < 1e-8 * closed, "{num} {closed}");
    }
}
