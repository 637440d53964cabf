//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is always printed; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use libm::lgamma;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use dihedral_dunkl::kernels;
use dihedral_dunkl::oracle::v_inverse;
use dihedral_dunkl::special::fseries::{f_humbert, f_laplace, f_numeric_laplace, f_series};
use dihedral_dunkl::special::humbert::{humbert_phi2, HumbertParams, HumbertRoute};
use dihedral_dunkl::transform;
use dihedral_dunkl::verify::{random_point, rank_one};
use dihedral_dunkl::{Config, DihedralGroup, DunklContext, Error, Intertwiner, Multiplicity, PlanePoint, Poly2};

const GROUPS: [usize; 5] = [2, 3, 4, 5, 6];
const KAPPAS: [f64; 5] = [0.5, 0.75, 1.0, 1.3, 2.5];

/// Five multiplicity combinations per group; odd groups have one orbit.
fn kappa_combos(k: usize) -> Vec<Multiplicity> {
    (0..5)
        .map(|i| {
            if k % 2 == 1 {
                Multiplicity::uniform(KAPPAS[i])
            } else {
                Multiplicity::new(KAPPAS[i], KAPPAS[(i + 2) % 5])
            }
        })
        .collect()
}

fn all_groups() -> Vec<DihedralGroup> {
    GROUPS
        .iter()
        .flat_map(|&k| kappa_combos(k).into_iter().map(move |m| DihedralGroup::new(k, m).unwrap()))
        .collect()
}

fn rng_for(criterion: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(criterion * 1000 + index as u64)
}

fn monomials(max_degree: u32) -> Vec<Poly2> {
    (0..=max_degree)
        .flat_map(|d| (0..=d).map(move |i| Poly2::monomial(i, d - i, 1.0)))
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Max over a parallel map, propagating the first error.
fn par_worst<T: Sync>(items: &[T], f: impl Fn(usize, &T) -> Result<f64, Error> + Sync) -> Result<f64, Error> {
    let parts: Vec<f64> = items
        .par_iter()
        .enumerate()
        .map(|(i, t)| f(i, t))
        .collect::<Result<_, _>>()?;
    Ok(parts.into_iter().fold(0.0, f64::max))
}

/// One measured quantity against its tolerance.
struct Part {
    label: &'static str,
    worst: f64,
    tol: f64,
}

impl Part {
    fn new(label: &'static str, worst: Result<f64, Error>, tol: f64) -> Self {
        let worst = worst.unwrap_or_else(|e| {
            eprintln!("  {label}: {e}");
            f64::INFINITY
        });
        Part { label, worst, tol }
    }

    fn passed(&self) -> bool {
        self.worst <= self.tol
    }
}

fn criterion_1(cfg: &Config) -> Vec<Part> {
    let groups = all_groups();
    let run = |bessel: bool| {
        par_worst(&groups, |i, g| {
            let mut rng = rng_for(1, i);
            let o = Intertwiner::new(DunklContext::new(g.clone()), 40)?;
            let elements = g.elements();
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let z = random_point(&mut rng, 1.5);
                let w = random_point(&mut rng, 1.5);
                let diff = if bessel {
                    let avg = elements.iter().map(|e| o.kernel_series(&z, &w.transform(e), 40)).sum::<f64>()
                        / elements.len() as f64;
                    kernels::generalized_bessel(g, &z, &w, cfg)? - avg
                } else {
                    kernels::dunkl_kernel(g, &z, &w, cfg)? - o.kernel_series(&z, &w, 40)
                };
                worst = worst.max(diff.abs());
            }
            Ok(worst)
        })
    };
    vec![
        Part::new("dunkl_kernel vs series", run(false), 1e-7),
        Part::new("generalized_bessel vs averaged series", run(true), 1e-7),
    ]
}

fn criterion_2() -> Vec<Part> {
    let groups = all_groups();
    let monos = monomials(8);
    let intertwining = par_worst(&groups, |_, g| {
        let ctx = DunklContext::new(g.clone());
        let v = Intertwiner::new(ctx.clone(), 8)?;
        let mut worst: f64 = 0.0;
        for m in &monos {
            let (t1, t2) = ctx.apply_both(&v.v_apply(m)?)?;
            worst = worst.max(t1.max_abs_diff(&v.v_apply(&m.partial_x1())?));
            worst = worst.max(t2.max_abs_diff(&v.v_apply(&m.partial_x2())?));
        }
        Ok(worst)
    });
    let inverse = par_worst(&groups, |_, g| {
        let ctx = DunklContext::new(g.clone());
        let v = Intertwiner::new(ctx.clone(), 8)?;
        let mut worst: f64 = 0.0;
        for m in &monos {
            worst = worst.max(v_inverse(&ctx, &v.v_apply(m)?)?.max_abs_diff(m));
        }
        Ok(worst)
    });
    vec![
        Part::new("T_j V = V d_j, coefficients", intertwining, 1e-9),
        Part::new("V^-1 V = id, coefficients", inverse, 1e-9),
    ]
}

fn criterion_3(cfg: &Config) -> Vec<Part> {
    let groups = all_groups();
    let monos = monomials(6);
    let general = par_worst(&groups, |i, g| {
        let mut rng = rng_for(3, i);
        let v = Intertwiner::new(DunklContext::new(g.clone()), 6)?;
        let images: Vec<Poly2> = monos.iter().map(|m| v.v_apply(m)).collect::<Result<_, _>>()?;
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let z = random_point(&mut rng, 1.5);
            for (m, vm) in monos.iter().zip(&images) {
                worst = worst.max((kernels::intertwine_general(g, m, &z, cfg)? - vm.eval_at(&z)).abs());
            }
        }
        Ok(worst)
    });
    let odd: Vec<DihedralGroup> = all_groups().into_iter().filter(|g| !g.is_even()).collect();
    let xu = par_worst(&odd, |i, g| {
        let mut rng = rng_for(31, i);
        let k = g.k();
        let v = Intertwiner::new(DunklContext::new(g.clone()), 6)?;
        let images: Vec<Poly2> = monos.iter().map(|m| v.v_apply(m)).collect::<Result<_, _>>()?;
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let q = rng.gen_range(0..2 * k);
            let r = rng.gen_range(0.0..1.5);
            let z = PlanePoint::from_polar(r, q as f64 * PI / k as f64);
            for (m, vm) in monos.iter().zip(&images) {
                worst = worst.max((kernels::xu_line(g, m, r, q, cfg)? - vm.eval_at(&z)).abs());
            }
        }
        Ok(worst)
    });
    vec![
        Part::new("intertwine_general vs oracle", general, 1e-6),
        Part::new("xu_line vs oracle", xu, 1e-6),
    ]
}

fn criterion_4(cfg: &Config) -> Vec<Part> {
    let mut grid = Vec::new();
    for k in [2, 3] {
        for lambda in [0.8, 1.5] {
            for xi in [-0.6, 0.0, 0.7] {
                for s in [1.5, 3.0] {
                    grid.push((k, lambda, xi, s));
                }
            }
        }
    }
    let numeric = par_worst(&grid, |_, &(k, lambda, xi, s)| {
        let n = f_numeric_laplace(k, lambda, 1.0, xi, s, cfg.laguerre_nodes)?;
        Ok(rel(n, f_laplace(k, lambda, 1.0, xi, s)?))
    });
    let groups = all_groups();
    let forms = par_worst(&groups, |i, g| {
        let mut rng = rng_for(4, i);
        let mut worst: f64 = 0.0;
        for _ in 0..4 {
            let z = random_point(&mut rng, 1.5);
            let w = random_point(&mut rng, 1.5);
            let s = z.r() * w.r() + rng.gen_range(0.5..3.0);
            let a = kernels::dunkl_kernel_laplace(g, &z, &w, s, cfg)?;
            let b = kernels::dunkl_kernel_laplace_bracket(g, &z, &w, s, cfg)?;
            worst = worst.max(rel(a, b));
        }
        Ok(worst)
    });
    vec![
        Part::new("numeric Laplace of f series (rel)", numeric, 1e-8),
        Part::new("factored vs bracket forms (rel)", forms, 1e-9),
    ]
}

fn criterion_5() -> Vec<Part> {
    let mut rng = rng_for(5, 0);
    let mut cases = Vec::new();
    for m in 1..=3 {
        for _ in 0..8 {
            let betas: Vec<f64> = (0..m).map(|_| rng.gen_range(0.3..2.5)).collect();
            let gamma = betas.iter().sum::<f64>() + rng.gen_range(0.2..2.0);
            let xs: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
            cases.push(HumbertParams::new(betas, gamma, xs));
        }
    }
    let routes = par_worst(&cases, |_, p| {
        let s = humbert_phi2(p, HumbertRoute::Series)?;
        let q = humbert_phi2(p, HumbertRoute::Quadrature(24))?;
        Ok(rel(s, q))
    });
    let mut f_cases = Vec::new();
    for k in 2..=4 {
        for lambda in [0.5, 1.0, 1.75, 3.8] {
            for b in [0.0, 0.7, 2.0] {
                for xi in [-1.0, -0.3, 0.4, 1.0] {
                    f_cases.push((k, lambda, b, xi));
                }
            }
        }
    }
    let two_route = par_worst(&f_cases, |_, &(k, lambda, b, xi)| {
        let series = f_series(k, lambda, b, xi, 1.0)?;
        let a = f_humbert(k, lambda, b, xi, HumbertRoute::Series)?;
        let q = f_humbert(k, lambda, b, xi, HumbertRoute::Quadrature(24))?;
        Ok(rel(series, a).max(rel(series, q)))
    });
    vec![
        Part::new("Humbert series vs simplex quadrature (rel)", routes, 1e-10),
        Part::new("f series vs Humbert routes (rel)", two_route, 1e-9),
    ]
}

fn criterion_6(cfg: &Config) -> Vec<Part> {
    let groups = all_groups();
    // Amount by which the smallest value fails to be positive.
    let positive = par_worst(&groups, |i, g| {
        let mut rng = rng_for(6, i);
        let w = random_point(&mut rng, 1.5);
        let mut smallest = f64::INFINITY;
        for a in 0..9 {
            for b in 0..9 {
                let z = PlanePoint::new(-1.5 + 0.375 * a as f64, -1.5 + 0.375 * b as f64);
                smallest = smallest.min(kernels::dunkl_kernel(g, &z, &w, cfg)?);
                smallest = smallest.min(kernels::generalized_bessel(g, &z, &w, cfg)?);
            }
        }
        Ok(if smallest > 0.0 { 0.0 } else { 1.0 - smallest })
    });
    let bounded = par_worst(&groups, |i, g| {
        let mut rng = rng_for(61, i);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let z = random_point(&mut rng, 1.5);
            let w = random_point(&mut rng, 1.5);
            let j = kernels::generalized_bessel_scaled(g, &z, &w, Complex64::i(), cfg)?;
            worst = worst.max(j.norm() - 1.0);
        }
        Ok(worst)
    });
    let pairs = [(0.5, 0.5), (0.5, 2.5), (0.75, 1.3), (1.0, 1.0), (2.5, 0.75)];
    let bracket = par_worst(&pairs, |_, &(a, b)| {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..=40 {
            for j in 0..=40 {
                let u = -1.0 + i as f64 / 20.0;
                let v = -1.0 + j as f64 / 20.0;
                worst = worst.max(-kernels::bracket(a, b, u, v));
            }
        }
        Ok(worst.max(0.0))
    });
    vec![
        Part::new("kernel and Bessel positive (shortfall)", positive, 0.0),
        Part::new("|J(iz, w)| - 1", bounded, 1e-9),
        Part::new("bracket >= 0 on 41x41 grid (shortfall)", bracket, 1e-12),
    ]
}

fn criterion_7(cfg: &Config) -> Vec<Part> {
    let combos = kappa_combos(2);
    let values = par_worst(&combos, |i, &m| {
        let g = DihedralGroup::new(2, m).unwrap();
        let v = Intertwiner::new(DunklContext::new(g.clone()), 6)?;
        let mut rng = rng_for(7, i);
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let z = random_point(&mut rng, 1.5);
            let expected = z.x1() / (1.0 + 2.0 * m.beta);
            worst = worst.max((v.v_apply(&Poly2::x1())?.eval_at(&z) - expected).abs());
            worst = worst.max((kernels::intertwine_general(&g, &Poly2::x1(), &z, cfg)? - expected).abs());
            for n in 0..=6u32 {
                let p = Poly2::monomial(0, n, 1.0);
                let moment = rank_one::power_moment(m.alpha, n as usize, z.x2(), cfg)?;
                worst = worst.max((v.v_apply(&p)?.eval_at(&z) - moment).abs());
                worst = worst.max((kernels::intertwine_general(&g, &p, &z, cfg)? - moment).abs());
                if n % 2 == 0 {
                    worst = worst.max((kernels::intertwine_i2_closed(&g, &p, &z, cfg)? - moment).abs());
                }
            }
        }
        Ok(worst)
    });
    let identities = par_worst(&KAPPAS, |i, &alpha| {
        let mut rng = rng_for(71, i);
        let mut worst: f64 = 0.0;
        for n in 0..=6 {
            let (l, r) = rank_one::q1_sides(alpha, n, cfg)?;
            worst = worst.max((l - r).abs());
            for _ in 0..3 {
                let u = rng.gen_range(-1.0..1.0);
                worst = worst.max((rank_one::e1_lhs(alpha, n, u)? - u.powi(n as i32)).abs());
            }
        }
        Ok(worst)
    });
    vec![
        Part::new("I2 values V(x1), V(x2^n)", values, 1e-10),
        Part::new("rank-one integral identities", identities, 1e-10),
    ]
}

fn criterion_8(cfg: &Config) -> Vec<Part> {
    let ps: Vec<Poly2> = ["1", "x1", "x1^2", "x1*x2"].iter().map(|s| s.parse().unwrap()).collect();
    let mut cases = Vec::new();
    for (k, m) in [(2, Multiplicity::new(0.5, 1.3)), (4, Multiplicity::new(0.75, 0.5))] {
        let g = DihedralGroup::new(k, m).unwrap();
        let mut rng = rng_for(8, k);
        for _ in 0..5 {
            cases.push((g.clone(), random_point(&mut rng, 1.0)));
        }
    }
    let heat = par_worst(&cases, |_, (g, y)| {
        let lhs = transform::heat_pairing(g, &ps, y, cfg)?;
        Ok(lhs
            .iter()
            .zip(&ps)
            .map(|(l, p)| (l - transform::heat_pairing_expected(p, y)).abs())
            .fold(0.0, f64::max))
    });
    let groups = all_groups();
    let macdonald = par_worst(&groups, |i, g| {
        let mut rng = rng_for(81, i);
        let ctx = DunklContext::new(g.clone());
        let monos = monomials(6);
        let mut worst: f64 = 0.0;
        for _ in 0..6 {
            let p = &monos[rng.gen_range(0..monos.len())];
            let q = &monos[rng.gen_range(0..monos.len())];
            let fischer = ctx.fischer_pair(p, q)?;
            let integral = transform::macdonald_integral(g, p, q, cfg)?;
            let scale = (ctx.fischer_pair(p, p)? * ctx.fischer_pair(q, q)?).abs().sqrt();
            worst = worst.max((fischer - integral).abs() / scale);
        }
        Ok(worst)
    });
    let combos = kappa_combos(2);
    let constant = par_worst(&combos, |_, &m| {
        let g = DihedralGroup::new(2, m).unwrap();
        // int |x1|^{2 beta} e^{-x1^2/2} dx1 * int |x2|^{2 alpha} e^{-x2^2/2} dx2
        let factor = |c: f64| 2f64.powf(c + 0.5) * lgamma(c + 0.5).exp();
        let closed = factor(m.alpha) * factor(m.beta);
        Ok(rel(transform::macdonald_constant(&g, cfg)?, closed))
    });
    vec![
        Part::new("heat-kernel pairing on I2, I4", heat, 1e-5),
        Part::new("Macdonald identity (rel)", macdonald, 1e-6),
        Part::new("macdonald_constant vs I2 closed form (rel)", constant, 1e-10),
    ]
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let criteria: [(&str, &dyn Fn() -> Vec<Part>); 8] = [
        ("oracle agreement of closed forms", &|| criterion_1(&cfg)),
        ("intertwining exactness", &criterion_2),
        ("closed-form intertwining vs oracle", &|| criterion_3(&cfg)),
        ("Laplace cross-check", &|| criterion_4(&cfg)),
        ("Humbert consistency", &criterion_5),
        ("positivity and bounds", &|| criterion_6(&cfg)),
        ("rank-one ground truth", &|| criterion_7(&cfg)),
        ("transform identities", &|| criterion_8(&cfg)),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let parts = run();
        let ok = parts.iter().all(Part::passed);
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {} ({:.1}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            t.elapsed().as_secs_f64()
        );
        for p in &parts {
            println!(
                "    {} {}: worst {:.3e}, tol {:.0e}",
                if p.passed() { "ok  " } else { "FAIL" },
                p.label,
                p.worst,
                p.tol
            );
        }
    }
    println!(
        "acceptance: {}/8 criteria passed in {:.1}s",
        8 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
