//! Randomized invariant suites behind `dunkl verify`.
//!
//! Each property draws its inputs from its own seeded generator, so a run is
//! reproducible for a given seed regardless of scheduling.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use libm::lgamma;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::Config;
use crate::dihedral::{DihedralGroup, Multiplicity, PlanePoint};
use crate::dunklops::DunklContext;
use crate::kernels;
use crate::oracle::Intertwiner;
use crate::poly2::Poly2;
use crate::special::fseries::{f_humbert, f_laplace, f_numeric_laplace, f_series};
use crate::special::humbert::{humbert_phi2, HumbertParams, HumbertRoute};
use crate::special::integrand::SimplexIntegrand;
use crate::special::quadrature::{cached_beta, cached_jacobi, cached_laguerre, BetaVariant};
use crate::transform;
use crate::Error;

/// Multiplicity values the suites sample from.
pub const KAPPAS: [f64; 5] = [0.5, 0.75, 1.0, 1.3, 2.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Kernels,
    Laplace,
    Xu,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "core" => Ok(Suite::Core),
            "kernels" => Ok(Suite::Kernels),
            "laplace" => Ok(Suite::Laplace),
            "xu" => Ok(Suite::Xu),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config(format!(
                "unknown suite '{s}' (expected core, kernels, laplace, xu or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Core => "core",
            Suite::Kernels => "kernels",
            Suite::Laplace => "laplace",
            Suite::Xu => "xu",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

/// Outcome of one property.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    /// Largest deviation seen; the property passes when `worst <= tol`.
    pub worst: f64,
    pub tol: f64,
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.worst <= self.tol
    }
}

type Run = fn(&mut ChaCha8Rng, &Config) -> Result<f64, Error>;

struct Property {
    suite: Suite,
    name: &'static str,
    tol: f64,
    run: Run,
}

const fn prop(suite: Suite, name: &'static str, tol: f64, run: Run) -> Property {
    Property { suite, name, tol, run }
}

fn properties() -> Vec<Property> {
    use Suite::*;
    vec![
        prop(Core, "poly2 print/parse round trip", 0.0, core_round_trip),
        prop(Core, "Dunkl operators commute", 1e-9, core_commute),
        prop(Core, "T_j V = V d_j", 1e-9, core_intertwining),
        prop(Core, "V^-1 V = id", 1e-9, core_inverse),
        prop(Core, "Fischer pairing symmetric", 1e-9, core_fischer_symmetric),
        prop(Core, "weight is group invariant", 1e-12, core_weight_invariant),
        prop(Core, "heat semigroup inverse", 1e-10, core_heat_inverse),
        prop(Core, "Macdonald identity", 1e-6, core_macdonald),
        prop(Kernels, "Dunkl kernel vs oracle series", 1e-7, kernels_vs_series),
        prop(Kernels, "Bessel vs averaged oracle series", 1e-7, bessel_vs_series),
        prop(Kernels, "kernel and Bessel positive", 0.0, kernels_positive),
        prop(Kernels, "|J(iz, w)| <= 1", 1e-9, bessel_bounded),
        prop(Kernels, "Bessel is group average of kernel", 1e-7, bessel_group_average),
        prop(Kernels, "Bessel invariant in z", 1e-8, bessel_invariant),
        prop(Kernels, "Bessel depends on invariants only", 1e-8, bessel_function_of_invariants),
        prop(Kernels, "Cartesian a_j construction", 1e-10, cartesian_roots),
        prop(Kernels, "closed-form intertwining of derivatives", 1e-6, closed_form_derivatives),
        prop(Kernels, "bracket nonnegative", 1e-12, bracket_nonnegative),
        prop(Kernels, "rank-one identities", 1e-10, rank_one_identities),
        prop(Kernels, "two-term kernel form", 1e-8, two_term_form),
        prop(Laplace, "numeric Laplace of f series", 1e-8, laplace_f_series),
        prop(Laplace, "factored vs bracket forms", 1e-9, laplace_two_forms),
        prop(Laplace, "special-point closed form", 1e-10, laplace_special),
        prop(Laplace, "large-s limit", 1e-3, laplace_limit),
        prop(Laplace, "kernel transform vs Laguerre quadrature", 1e-8, laplace_kernel_numeric),
        prop(Laplace, "Humbert series vs quadrature", 1e-10, humbert_routes),
        prop(Laplace, "f series vs Humbert form", 1e-9, f2_routes),
        prop(Xu, "xu_line of 1", 1e-13, xu_constant),
        prop(Xu, "xu_line vs oracle", 1e-7, xu_vs_oracle),
        prop(Xu, "xu_line vs general intertwining", 1e-7, xu_vs_general),
    ]
}

/// Names of the properties a suite runs, in order.
pub fn property_names(suite: Suite) -> Vec<&'static str> {
    properties()
        .into_iter()
        .filter(|p| suite == Suite::All || p.suite == suite)
        .map(|p| p.name)
        .collect()
}

/// Runs a suite; results come back in declaration order.
pub fn run_suite(suite: Suite, seed: u64, cfg: &Config) -> Vec<Check> {
    let selected: Vec<(usize, Property)> = properties()
        .into_iter()
        .enumerate()
        .filter(|(_, p)| suite == Suite::All || p.suite == suite)
        .collect();
    selected
        .par_iter()
        .map(|(index, p)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(*index as u64));
            let (worst, error) = match (p.run)(&mut rng, cfg) {
                Ok(w) => (w, None),
                Err(e) => (f64::INFINITY, Some(e.to_string())),
            };
            Check {
                suite: p.suite,
                name: p.name,
                worst,
                tol: p.tol,
                error,
            }
        })
        .collect()
}

pub fn random_point(rng: &mut ChaCha8Rng, max_radius: f64) -> PlanePoint {
    let r = max_radius * rng.gen::<f64>().sqrt();
    PlanePoint::from_polar(r, rng.gen_range(-PI..PI))
}

/// `I_k` with `k` in `2..=6` and multiplicities drawn from [`KAPPAS`].
pub fn random_group(rng: &mut ChaCha8Rng) -> DihedralGroup {
    let k = rng.gen_range(2..=6);
    group_with_random_kappa(rng, k)
}

pub fn group_with_random_kappa(rng: &mut ChaCha8Rng, k: usize) -> DihedralGroup {
    let a = KAPPAS[rng.gen_range(0..KAPPAS.len())];
    let b = KAPPAS[rng.gen_range(0..KAPPAS.len())];
    DihedralGroup::new(k, Multiplicity::new(a, b)).expect("valid group")
}

/// A polynomial of degree `<= max_degree` with a few small coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, max_degree: u32) -> Poly2 {
    let terms = rng.gen_range(1..=5);
    Poly2::from_terms((0..terms).map(|_| {
        let d = rng.gen_range(0..=max_degree);
        let i = rng.gen_range(0..=d);
        ((i, d - i), rng.gen_range(-4i32..=4) as f64 / 2.0)
    }))
}

fn monomials(max_degree: u32) -> impl Iterator<Item = Poly2> {
    (0..=max_degree).flat_map(|d| (0..=d).map(move |i| Poly2::monomial(i, d - i, 1.0)))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn core_round_trip(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let p = random_poly(rng, 8);
        let back: Poly2 = p.to_string().parse()?;
        worst = worst.max(back.max_abs_diff(&p));
    }
    Ok(worst)
}

fn core_commute(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let ctx = DunklContext::new(random_group(rng));
        let p = random_poly(rng, 8);
        let a = ctx.t1(&ctx.t2(&p)?)?;
        let b = ctx.t2(&ctx.t1(&p)?)?;
        worst = worst.max(a.max_abs_diff(&b));
    }
    Ok(worst)
}

fn core_intertwining(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let ctx = DunklContext::new(random_group(rng));
        let v = Intertwiner::new(ctx.clone(), 6)?;
        for m in monomials(6) {
            let vp = v.v_apply(&m)?;
            let (t1, t2) = ctx.apply_both(&vp)?;
            worst = worst.max(t1.max_abs_diff(&v.v_apply(&m.partial_x1())?));
            worst = worst.max(t2.max_abs_diff(&v.v_apply(&m.partial_x2())?));
        }
    }
    Ok(worst)
}

fn core_inverse(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let ctx = DunklContext::new(random_group(rng));
        let v = Intertwiner::new(ctx.clone(), 8)?;
        for _ in 0..5 {
            let p = random_poly(rng, 8);
            let back = crate::oracle::v_inverse(&ctx, &v.v_apply(&p)?)?;
            worst = worst.max(back.max_abs_diff(&p));
        }
    }
    Ok(worst)
}

fn core_fischer_symmetric(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let ctx = DunklContext::new(random_group(rng));
        let p = random_poly(rng, 6);
        let q = random_poly(rng, 6);
        worst = worst.max(rel(ctx.fischer_pair(&p, &q)?, ctx.fischer_pair(&q, &p)?));
    }
    Ok(worst)
}

fn core_weight_invariant(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let g = random_group(rng);
        let x = random_point(rng, 1.5);
        let w0 = g.weight(&x);
        for e in g.elements() {
            worst = worst.max(rel(g.weight(&x.transform(&e)), w0));
        }
    }
    Ok(worst)
}

fn core_heat_inverse(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let ctx = DunklContext::new(random_group(rng));
        let p = random_poly(rng, 8);
        let s = rng.gen_range(0.1..1.0);
        let back = ctx.heat_semigroup(-s, &ctx.heat_semigroup(s, &p)?)?;
        worst = worst.max(back.max_abs_diff(&p));
    }
    Ok(worst)
}

fn core_macdonald(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..4 {
        let g = random_group(rng);
        let ctx = DunklContext::new(g.clone());
        let p = random_poly(rng, 6);
        let q = random_poly(rng, 6);
        let fischer = ctx.fischer_pair(&p, &q)?;
        let integral = transform::macdonald_integral(&g, &p, &q, cfg)?;
        let scale = ctx.fischer_pair(&p, &p)?.abs().sqrt() * ctx.fischer_pair(&q, &q)?.abs().sqrt();
        worst = worst.max((fischer - integral).abs() / scale.max(1e-300));
    }
    Ok(worst)
}

fn kernels_vs_series(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in 2..=6 {
        let g = group_with_random_kappa(rng, k);
        let o = Intertwiner::new(DunklContext::new(g.clone()), 40)?;
        for _ in 0..2 {
            let z = random_point(rng, 1.5);
            let w = random_point(rng, 1.5);
            let closed = kernels::dunkl_kernel(&g, &z, &w, cfg)?;
            worst = worst.max((closed - o.kernel_series(&z, &w, 40)).abs());
        }
    }
    Ok(worst)
}

fn bessel_vs_series(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in 2..=6 {
        let g = group_with_random_kappa(rng, k);
        let o = Intertwiner::new(DunklContext::new(g.clone()), 40)?;
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        let elements = g.elements();
        let avg = elements
            .iter()
            .map(|e| o.kernel_series(&z, &w.transform(e), 40))
            .sum::<f64>()
            / elements.len() as f64;
        worst = worst.max((kernels::generalized_bessel(&g, &z, &w, cfg)? - avg).abs());
    }
    Ok(worst)
}

/// Returns the amount by which the smallest value fails to be positive.
fn kernels_positive(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut smallest = f64::INFINITY;
    for k in 2..=6 {
        let g = group_with_random_kappa(rng, k);
        let w = random_point(rng, 1.5);
        for i in 0..5 {
            for j in 0..5 {
                let z = PlanePoint::new(-1.5 + 0.75 * i as f64, -1.5 + 0.75 * j as f64);
                smallest = smallest.min(kernels::dunkl_kernel(&g, &z, &w, cfg)?);
                smallest = smallest.min(kernels::generalized_bessel(&g, &z, &w, cfg)?);
            }
        }
    }
    Ok(if smallest > 0.0 { 0.0 } else { 1.0 - smallest })
}

fn bessel_bounded(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in 2..=6 {
        let g = group_with_random_kappa(rng, k);
        for _ in 0..4 {
            let z = random_point(rng, 1.5);
            let w = random_point(rng, 1.5);
            let j = kernels::generalized_bessel_scaled(&g, &z, &w, Complex64::i(), cfg)?;
            worst = worst.max(j.norm() - 1.0);
        }
    }
    Ok(worst)
}

fn bessel_group_average(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [2, 4, 6] {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        let elements = g.elements();
        let mut avg = 0.0;
        for e in &elements {
            avg += kernels::dunkl_kernel(&g, &z, &w.transform(e), cfg)?;
        }
        avg /= elements.len() as f64;
        worst = worst.max((kernels::generalized_bessel(&g, &z, &w, cfg)? - avg).abs());
    }
    Ok(worst)
}

fn bessel_invariant(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [2, 4, 6] {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        let j0 = kernels::generalized_bessel(&g, &z, &w, cfg)?;
        for r in g.reflections() {
            worst = worst.max((kernels::generalized_bessel(&g, &z.transform(r), &w, cfg)? - j0).abs());
        }
    }
    Ok(worst)
}

fn bessel_function_of_invariants(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [2, 4, 6] {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        // |zw| and the products of the cosines and sines of k' phi are kept.
        let t = rng.gen_range(0.6..1.4);
        let z2 = PlanePoint::from_polar(w.r() * t, -w.phi());
        let w2 = PlanePoint::from_polar(z.r() / t, -z.phi());
        let a = kernels::generalized_bessel(&g, &z, &w, cfg)?;
        let b = kernels::generalized_bessel(&g, &z2, &w2, cfg)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

fn cartesian_roots(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let kp = rng.gen_range(2..=4);
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        let zc = Complex64::new(z.x1(), z.x2()).powi(kp as i32);
        let wc = Complex64::new(w.x1(), w.x2()).powi(kp as i32);
        let re = (zc * wc.conj()).re;
        let radius = (z.r() * w.r()).powi(kp as i32);
        let c = Complex64::new(re, (radius * radius - re * re).max(0.0).sqrt());
        let mut cart: Vec<f64> = (0..kp)
            .map(|j| {
                Complex64::from_polar(c.norm().powf(1.0 / kp as f64), (c.arg() - 2.0 * PI * j as f64) / kp as f64).re
            })
            .collect();
        let mut polar = SimplexIntegrand::bessel(&z, &w, 1.0, 1.0, kp, false).a;
        cart.sort_by(f64::total_cmp);
        polar.sort_by(f64::total_cmp);
        for (a, b) in cart.iter().zip(&polar) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

fn closed_form_derivatives(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    let g = random_group(rng);
    let ctx = DunklContext::new(g.clone());
    let v = Intertwiner::new(ctx.clone(), 6)?;
    let z = random_point(rng, 1.5);
    for m in monomials(6) {
        let (t1, t2) = ctx.apply_both(&v.v_apply(&m)?)?;
        for (d, t) in [(m.partial_x1(), t1), (m.partial_x2(), t2)] {
            let closed = kernels::intertwine_general(&g, &d, &z, cfg)?;
            worst = worst.max((closed - t.eval_at(&z)).abs());
        }
    }
    Ok(worst)
}

fn bracket_nonnegative(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let a = KAPPAS[rng.gen_range(0..KAPPAS.len())];
        let b = KAPPAS[rng.gen_range(0..KAPPAS.len())];
        for i in 0..=40 {
            for j in 0..=40 {
                let u = -1.0 + i as f64 / 20.0;
                let v = -1.0 + j as f64 / 20.0;
                worst = worst.max(-kernels::bracket(a, b, u, v));
            }
        }
    }
    Ok(worst)
}

fn rank_one_identities(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for alpha in [0.5, 1.0, 2.0] {
        for n in 0..=6 {
            let (l, r) = rank_one::q1_sides(alpha, n, cfg)?;
            worst = worst.max((l - r).abs());
            let u = rng.gen_range(-1.0..1.0);
            worst = worst.max((rank_one::e1_lhs(alpha, n, u)? - u.powi(n as i32)).abs());
        }
    }
    Ok(worst)
}

fn two_term_form(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [2, 4, 6] {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        let a = kernels::dunkl_kernel(&g, &z, &w, cfg)?;
        let b = kernels::dunkl_kernel_m2(&g, &z, &w, cfg)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

fn laplace_f_series(_: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [2, 3] {
        for lambda in [0.8, 1.5] {
            for xi in [-0.6, 0.0, 0.7] {
                for s in [1.5, 3.0] {
                    let numeric = f_numeric_laplace(k, lambda, 1.0, xi, s, cfg.laguerre_nodes)?;
                    worst = worst.max(rel(numeric, f_laplace(k, lambda, 1.0, xi, s)?));
                }
            }
        }
    }
    Ok(worst)
}

fn laplace_two_forms(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in 2..=6 {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        let s = z.r() * w.r() + rng.gen_range(0.5..3.0);
        let a = kernels::dunkl_kernel_laplace(&g, &z, &w, s, cfg)?;
        let b = kernels::dunkl_kernel_laplace_bracket(&g, &z, &w, s, cfg)?;
        worst = worst.max(rel(a, b));
    }
    Ok(worst)
}

fn laplace_special(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [3, 5] {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.5);
        let p = rng.gen_range(0..2 * k);
        let w = PlanePoint::from_polar(1.0, p as f64 * PI / k as f64);
        let s = z.r() + rng.gen_range(0.5..2.0);
        let closed = kernels::laplace_special_point(&g, &z, p, s)?;
        let general = kernels::dunkl_kernel_laplace(&g, &z, &w, s, cfg)?;
        worst = worst.max((closed - general).abs() / closed);
    }
    Ok(worst)
}

fn laplace_exponent(g: &DihedralGroup) -> f64 {
    let kappa = g.kappa();
    if g.is_even() {
        g.half_order() as f64 * (kappa.alpha + kappa.beta)
    } else {
        g.k() as f64 * kappa.alpha
    }
}

fn laplace_limit(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    let s: f64 = 1e4;
    for k in 2..=6 {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.5);
        let w = random_point(rng, 1.5);
        let m = laplace_exponent(&g);
        let v = kernels::dunkl_kernel_laplace(&g, &z, &w, s, cfg)? * s.powf(m + 1.0);
        worst = worst.max(rel(v, lgamma(m + 1.0).exp()));
    }
    Ok(worst)
}

fn laplace_kernel_numeric(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [2, 3, 4] {
        let g = group_with_random_kappa(rng, k);
        let z = random_point(rng, 1.0);
        let w = random_point(rng, 1.0);
        let s = 2.0;
        let m = laplace_exponent(&g);
        let rule = cached_laguerre(60, m)?;
        let mut numeric = 0.0;
        for (tau, wt) in rule.iter() {
            numeric += wt * kernels::dunkl_kernel(&g, &z.scale(tau / s), &w, cfg)?;
        }
        numeric /= s.powf(m + 1.0);
        worst = worst.max(rel(numeric, kernels::dunkl_kernel_laplace(&g, &z, &w, s, cfg)?));
    }
    Ok(worst)
}

fn humbert_routes(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..6 {
        let m = rng.gen_range(1..=3);
        let betas: Vec<f64> = (0..m).map(|_| rng.gen_range(0.3..2.0)).collect();
        let gamma = betas.iter().sum::<f64>() + rng.gen_range(0.3..2.0);
        let xs: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let params = HumbertParams::new(betas, gamma, xs);
        let s = humbert_phi2(&params, HumbertRoute::Series)?;
        let q = humbert_phi2(&params, HumbertRoute::Quadrature(24))?;
        worst = worst.max(rel(s, q));
    }
    Ok(worst)
}

fn f2_routes(rng: &mut ChaCha8Rng, _: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..6 {
        let k = rng.gen_range(2..=4);
        let lambda = KAPPAS[rng.gen_range(0..KAPPAS.len())] + KAPPAS[rng.gen_range(0..KAPPAS.len())];
        let b = rng.gen_range(0.0..2.25);
        let xi = rng.gen_range(-1.0..1.0);
        let series = f_series(k, lambda, b, xi, 1.0)?;
        let route = if k - 1 <= 2 { HumbertRoute::Quadrature(24) } else { HumbertRoute::Series };
        worst = worst.max(rel(series, f_humbert(k, lambda, b, xi, route)?));
    }
    Ok(worst)
}

fn xu_constant(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [3, 5] {
        let g = group_with_random_kappa(rng, k);
        let q = rng.gen_range(0..2 * k);
        let v = kernels::xu_line(&g, &Poly2::constant(1.0), rng.gen_range(0.0..1.5), q, cfg)?;
        worst = worst.max((v - 1.0).abs());
    }
    Ok(worst)
}

fn xu_vs_oracle(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [3, 5] {
        let g = group_with_random_kappa(rng, k);
        let v = Intertwiner::new(DunklContext::new(g.clone()), 6)?;
        for _ in 0..4 {
            let p = random_poly(rng, 6);
            let q = rng.gen_range(0..2 * k);
            let r = rng.gen_range(0.0..1.5);
            let z = PlanePoint::from_polar(r, q as f64 * PI / k as f64);
            let exact = v.v_apply(&p)?.eval_at(&z);
            worst = worst.max((kernels::xu_line(&g, &p, r, q, cfg)? - exact).abs());
        }
    }
    Ok(worst)
}

fn xu_vs_general(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in [3, 5] {
        let g = group_with_random_kappa(rng, k);
        let p = random_poly(rng, 5);
        let q = rng.gen_range(0..2 * k);
        let r = rng.gen_range(0.0..1.5);
        let z = PlanePoint::from_polar(r, q as f64 * PI / k as f64);
        let general = kernels::intertwine_general(&g, &p, &z, cfg)?;
        worst = worst.max((kernels::xu_line(&g, &p, r, q, cfg)? - general).abs());
    }
    Ok(worst)
}

/// The rank-one (`I_1`) integral identities behind the classical formula
/// `V(x_2^n) = int (x_2 u)^n dmu^alpha(u)`.
pub mod rank_one {
    use super::*;

    /// Nodes and weights for `int_0^1 f(t) t^e dt`.
    fn t_rule(e: f64, order: usize) -> Result<Vec<(f64, f64)>, Error> {
        let rule = cached_jacobi(order, 0.0, e)?;
        let scale = 0.5f64.powf(1.0 + e);
        Ok(rule.iter().map(|(x, w)| (0.5 * (1.0 + x), scale * w)).collect())
    }

    /// `alpha int_0^1 (ut+1-t)^n t^{alpha-1} dt + int_0^1 (u-1) n (ut+1-t)^{n-1} t^alpha dt`,
    /// which equals `u^n`.
    pub fn e1_lhs(alpha: f64, n: usize, u: f64) -> Result<f64, Error> {
        let order = n / 2 + 2;
        let first: f64 = t_rule(alpha - 1.0, order)?
            .iter()
            .map(|&(t, w)| w * (u * t + 1.0 - t).powi(n as i32))
            .sum();
        let second: f64 = if n == 0 {
            0.0
        } else {
            t_rule(alpha, order)?
                .iter()
                .map(|&(t, w)| w * (u - 1.0) * n as f64 * (u * t + 1.0 - t).powi(n as i32 - 1))
                .sum()
        };
        Ok(alpha * first + second)
    }

    /// Both sides of
    /// `alpha int int (ut+1-t)^n t^{alpha-1} dt (-2u) dnu^alpha(u)
    ///  = int int n (u-1)(ut+1-t)^{n-1} t^alpha dt dmu^alpha(u)`.
    pub fn q1_sides(alpha: f64, n: usize, cfg: &Config) -> Result<(f64, f64), Error> {
        let order = n / 2 + 2;
        let nu = cached_beta(alpha, cfg.uv_order, BetaVariant::Nu)?;
        let mu = cached_beta(alpha, cfg.uv_order, BetaVariant::Mu)?;
        let ta = t_rule(alpha - 1.0, order)?;
        let tb = t_rule(alpha, order)?;
        let mut lhs = 0.0;
        for (u, wu) in nu.iter() {
            let inner: f64 = ta.iter().map(|&(t, w)| w * (u * t + 1.0 - t).powi(n as i32)).sum();
            lhs += wu * alpha * inner * (-2.0 * u);
        }
        let mut rhs = 0.0;
        if n > 0 {
            for (u, wu) in mu.iter() {
                let inner: f64 = tb
                    .iter()
                    .map(|&(t, w)| w * n as f64 * (u - 1.0) * (u * t + 1.0 - t).powi(n as i32 - 1))
                    .sum();
                rhs += wu * inner;
            }
        }
        Ok((lhs, rhs))
    }

    /// `int (x u)^n dmu^alpha(u)`, the rank-one image of `x^n`.
    pub fn power_moment(alpha: f64, n: usize, x: f64, cfg: &Config) -> Result<f64, Error> {
        let mu = cached_beta(alpha, cfg.uv_order.max(n / 2 + 1), BetaVariant::Mu)?;
        Ok(mu.integrate(|u| (x * u).powi(n as i32)))
    }
}
