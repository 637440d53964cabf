//! Exponent data `a_j`, `a_j^+`, `a_j^-`, `a_k`, `b_j` of the simplex
//! integrands behind the closed-form kernels.

use std::f64::consts::PI;

use crate::dihedral::PlanePoint;

/// `xi_{u,v}(a, b) = v cos a cos b + u sin a sin b`.
pub fn xi_uv(u: f64, v: f64, a: f64, b: f64) -> f64 {
    v * a.cos() * b.cos() + u * a.sin() * b.sin()
}

/// Principal `arccos` with the argument clamped into `[-1, 1]`.
pub fn arccos_clamped(xi: f64) -> f64 {
    xi.clamp(-1.0, 1.0).acos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexIntegrand {
    pub xi: f64,
    pub q: f64,
    pub a: Vec<f64>,
    pub a_k: Option<f64>,
}

impl SimplexIntegrand {
    /// `b_j = b cos((q - 2 j pi) / k)` with `q = arccos(xi)`.
    pub fn series(b: f64, xi: f64, k: usize) -> Self {
        let q = arccos_clamped(xi);
        let a = (0..k)
            .map(|j| b * ((q - 2.0 * PI * j as f64) / k as f64).cos())
            .collect();
        SimplexIntegrand { xi, q, a, a_k: None }
    }

    /// `a_j^+` (or `a_j^-` when `minus`) for the generalized Bessel function
    /// of `I_{2k'}`, built from `q_{u,v}(k' phi_1, k' phi_2)`.
    pub fn bessel(z: &PlanePoint, w: &PlanePoint, u: f64, v: f64, kp: usize, minus: bool) -> Self {
        let kf = kp as f64;
        let xi = xi_uv(u, v, kf * z.phi(), kf * w.phi());
        let q = arccos_clamped(xi);
        let b = z.r() * w.r();
        let base = if minus { PI - q } else { q };
        let a = (0..kp)
            .map(|j| b * ((base - 2.0 * PI * j as f64) / kf).cos())
            .collect();
        SimplexIntegrand { xi, q, a, a_k: None }
    }

    /// `a_j = |zw| cos((q + 2 pi j) / m)` and `a_k = Re(z conj w)` for the
    /// Dunkl kernel; `m` is `k'` for `I_{2k'}` and `k` for odd `I_k`.
    pub fn dunkl(z: &PlanePoint, w: &PlanePoint, u: f64, v: f64, m: usize) -> Self {
        let mf = m as f64;
        let xi = xi_uv(u, v, mf * z.phi(), mf * w.phi());
        let q = arccos_clamped(xi);
        let b = z.r() * w.r();
        let a = (0..m)
            .map(|j| b * ((q + 2.0 * PI * j as f64) / mf).cos())
            .collect();
        SimplexIntegrand {
            xi,
            q,
            a,
            a_k: Some(z.dot(w)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn exponents_bounded_by_radius() {
        let z = PlanePoint::new(0.8, -0.6);
        let w = PlanePoint::new(-1.1, 0.4);
        for kp in 1..=4 {
            for &(u, v) in &[(-1.0, 1.0), (0.3, -0.7), (1.0, 1.0)] {
                for minus in [false, true] {
                    let s = SimplexIntegrand::bessel(&z, &w, u, v, kp, minus);
                    assert!(s.a.iter().all(|a| a.abs() <= z.r() * w.r() + 1e-15));
                }
                let d = SimplexIntegrand::dunkl(&z, &w, u, v, kp);
                assert_eq!(d.a.len(), kp);
                assert!((d.a_k.unwrap() - z.dot(&w)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn cartesian_construction_matches_polar() {
        // {a_j^+} are the real parts of the k'-th roots of
        // Re(z^k' conj w^k') + i sqrt(|zw|^{2k'} - Re(..)^2) at u = v = 1.
        let z = PlanePoint::new(0.9, 0.35);
        let w = PlanePoint::new(-0.2, 0.75);
        for kp in 2..=4 {
            let zc = Complex64::new(z.x1(), z.x2()).powi(kp as i32);
            let wc = Complex64::new(w.x1(), w.x2()).powi(kp as i32);
            let re = (zc * wc.conj()).re;
            let radius = (z.r() * w.r()).powi(kp as i32);
            let c = Complex64::new(re, (radius * radius - re * re).max(0.0).sqrt());
            let mut cart: Vec<f64> = (0..kp)
                .map(|j| {
                    let root = Complex64::from_polar(c.norm().powf(1.0 / kp as f64), (c.arg() - 2.0 * PI * j as f64) / kp as f64);
                    root.re
                })
                .collect();
            let mut polar = SimplexIntegrand::bessel(&z, &w, 1.0, 1.0, kp, false).a;
            cart.sort_by(|a, b| a.partial_cmp(b).unwrap());
            polar.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in cart.iter().zip(&polar) {
                assert!((a - b).abs() < 1e-10, "k'={kp}");
            }
        }
    }
}
