//! Dihedral groups `I_k`, their roots and the weight function.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::poly2::LinearMap2;
use crate::Error;

/// Multiplicity pair. For odd `k` only `alpha` is meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multiplicity {
    pub alpha: f64,
    pub beta: f64,
}

impl Multiplicity {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Multiplicity { alpha, beta }
    }

    pub fn uniform(alpha: f64) -> Self {
        Multiplicity { alpha, beta: alpha }
    }

    pub fn zero() -> Self {
        Multiplicity::uniform(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orbit {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub vector: [f64; 2],
    pub orbit: Orbit,
}

/// A point of the plane with both Cartesian and polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    x1: f64,
    x2: f64,
    r: f64,
    phi: f64,
}

impl PlanePoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        PlanePoint {
            x1,
            x2,
            r: x1.hypot(x2),
            phi: normalize_angle(x2.atan2(x1)),
        }
    }

    pub fn from_polar(r: f64, phi: f64) -> Self {
        let phi = normalize_angle(phi);
        let (s, c) = phi.sin_cos();
        PlanePoint {
            x1: r * c,
            x2: r * s,
            r,
            phi,
        }
    }

    pub fn origin() -> Self {
        PlanePoint::new(0.0, 0.0)
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn coords(&self) -> [f64; 2] {
        [self.x1, self.x2]
    }

    pub fn dot(&self, other: &PlanePoint) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    pub fn scale(&self, s: f64) -> PlanePoint {
        PlanePoint::new(s * self.x1, s * self.x2)
    }

    pub fn transform(&self, map: &LinearMap2) -> PlanePoint {
        let [a, b] = map.apply(self.coords());
        PlanePoint::new(a, b)
    }
}

/// Reduces an angle into `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t == -PI {
        t = PI;
    }
    t
}

/// The dihedral group `I_k` of order `2k` with a multiplicity function.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralGroup {
    k: usize,
    reflections: Vec<LinearMap2>,
    roots: Vec<Root>,
    kappa: Multiplicity,
}

impl DihedralGroup {
    pub fn new(k: usize, kappa: Multiplicity) -> Result<Self, Error> {
        if k < 1 {
            return Err(Error::InvalidGroup(format!("order k must be >= 1, got {k}")));
        }
        if !(kappa.alpha >= 0.0 && kappa.beta >= 0.0)
            || !kappa.alpha.is_finite()
            || !kappa.beta.is_finite()
        {
            return Err(Error::Precondition(format!(
                "multiplicities must be finite and non-negative, got ({}, {})",
                kappa.alpha, kappa.beta
            )));
        }
        let kappa = if k % 2 == 1 {
            Multiplicity::uniform(kappa.alpha)
        } else {
            kappa
        };
        let kf = k as f64;
        let mut reflections = Vec::with_capacity(k);
        let mut roots = Vec::with_capacity(k);
        for j in 0..k {
            reflections.push(LinearMap2::conjugate_then_rotate(2.0 * PI * j as f64 / kf));
            let mut psi = PI * j as f64 / kf + FRAC_PI_2;
            if psi > FRAC_PI_2 + 1e-12 {
                psi -= PI;
            }
            let vector = if j == 0 { [0.0, 1.0] } else { [psi.cos(), psi.sin()] };
            let orbit = if k % 2 == 0 && j % 2 == 1 {
                Orbit::B
            } else {
                Orbit::A
            };
            roots.push(Root { vector, orbit });
        }
        Ok(DihedralGroup {
            k,
            reflections,
            roots,
            kappa,
        })
    }

    /// Parses `I<k>`, e.g. `I4`.
    pub fn from_spec(spec: &str, kappa: Multiplicity) -> Result<Self, Error> {
        let digits = spec
            .trim()
            .strip_prefix(['I', 'i'])
            .ok_or_else(|| Error::InvalidGroup(format!("expected I<k>, got '{spec}'")))?;
        let k: usize = digits
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("expected I<k>, got '{spec}'")))?;
        Self::new(k, kappa)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_even(&self) -> bool {
        self.k % 2 == 0
    }

    /// `k / 2` for even groups.
    pub fn half_order(&self) -> usize {
        self.k / 2
    }

    pub fn order(&self) -> usize {
        2 * self.k
    }

    pub fn kappa(&self) -> Multiplicity {
        self.kappa
    }

    pub fn with_kappa(&self, kappa: Multiplicity) -> Result<Self, Error> {
        Self::new(self.k, kappa)
    }

    pub fn name(&self) -> String {
        format!("I{}", self.k)
    }

    pub fn reflections(&self) -> &[LinearMap2] {
        &self.reflections
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn multiplicity(&self, orbit: Orbit) -> f64 {
        match orbit {
            Orbit::A => self.kappa.alpha,
            Orbit::B => self.kappa.beta,
        }
    }

    /// Sum of multiplicities over the positive roots.
    pub fn gamma(&self) -> f64 {
        self.roots.iter().map(|r| self.multiplicity(r.orbit)).sum()
    }

    /// All `2k` elements: rotations by `2 pi m / k` then the reflections.
    pub fn elements(&self) -> Vec<LinearMap2> {
        let kf = self.k as f64;
        let mut out: Vec<LinearMap2> = (0..self.k)
            .map(|m| LinearMap2::rotation(2.0 * PI * m as f64 / kf))
            .collect();
        out.extend(self.reflections.iter().copied());
        out
    }

    /// `prod |<root, x>|^{2 kappa(root)}`.
    pub fn weight(&self, x: &PlanePoint) -> f64 {
        self.roots
            .iter()
            .map(|r| {
                let e = 2.0 * self.multiplicity(r.orbit);
                let d = (r.vector[0] * x.x1() + r.vector[1] * x.x2()).abs();
                if e == 0.0 {
                    1.0
                } else {
                    d.powf(e)
                }
            })
            .product()
    }

    /// Mirror angles `pi j / k` of the reflections, in `[0, pi)`.
    pub fn mirror_angles(&self) -> Vec<f64> {
        (0..self.k).map(|j| PI * j as f64 / self.k as f64).collect()
    }
}
