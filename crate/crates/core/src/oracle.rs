//! Exact intertwining operator and the Dunkl-kernel power series.
//!
//! `V^{-1}` is the finite exponential series
//! `p -> sum_{i+j=n} x1^i x2^j (T_1^i T_2^j p)(0) / (i! j!)` on each `P_n`,
//! and `V` is obtained by inverting that map degree by degree.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::dihedral::PlanePoint;
use crate::dunklops::DunklContext;
use crate::poly2::Poly2;
use crate::Error;

/// Default truncation degree of the kernel series.
pub const DEFAULT_SERIES_DEGREE: usize = 40;

/// `V^{-1} p` straight from its defining series.
pub fn v_inverse(ctx: &DunklContext, p: &Poly2) -> Result<Poly2, Error> {
    let mut out = Poly2::zero();
    for (n, pn) in p.homogeneous_parts() {
        // powers[j] = T_2^j p_n
        let mut powers = vec![pn];
        for _ in 0..n {
            let next = ctx.t2(powers.last().expect("non-empty"))?;
            powers.push(next);
        }
        let mut terms = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let i = n - j;
            let mut q = powers[j as usize].clone();
            for _ in 0..i {
                q = ctx.t1(&q)?;
            }
            let value = q.coeff(0, 0) / (factorial(i) * factorial(j));
            terms.push(((i, j), value));
        }
        out = &out + &Poly2::from_terms(terms);
    }
    Ok(out)
}

/// `V p`, building the needed degree blocks on the fly.
pub fn v_apply(ctx: &DunklContext, p: &Poly2) -> Result<Poly2, Error> {
    let deg = p.degree().unwrap_or(0) as usize;
    Intertwiner::new(ctx.clone(), deg)?.v_apply(p)
}

/// Degree-`<= n_max` partial sum of `E(z, w) = V(e^{<., w>})(z)`.
pub fn kernel_series(
    ctx: &DunklContext,
    z: &PlanePoint,
    w: &PlanePoint,
    n_max: usize,
) -> Result<f64, Error> {
    Ok(Intertwiner::new(ctx.clone(), n_max)?.kernel_series(z, w, n_max))
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Matrices of `V^{-1}` and `V` on `P_n` in the basis `x1^{n-m} x2^m`.
#[derive(Debug, Clone)]
struct Block {
    vinv: DMatrix<f64>,
    v: DMatrix<f64>,
}

/// Cached degree blocks of the intertwining operator up to a fixed degree.
#[derive(Debug, Clone)]
pub struct Intertwiner {
    ctx: DunklContext,
    blocks: Vec<Block>,
    max_condition: f64,
}

impl Intertwiner {
    pub fn new(ctx: DunklContext, max_degree: usize) -> Result<Self, Error> {
        Self::with_condition_limit(ctx, max_degree, 1e12)
    }

    pub fn with_condition_limit(
        ctx: DunklContext,
        max_degree: usize,
        max_condition: f64,
    ) -> Result<Self, Error> {
        // d1[d], d2[d]: T_1, T_2 as d x (d+1) matrices P_d -> P_{d-1}.
        let ops: Vec<(DMatrix<f64>, DMatrix<f64>)> = (0..=max_degree)
            .into_par_iter()
            .map(|d| operator_matrices(&ctx, d))
            .collect::<Result<_, _>>()?;
        // functionals[a] = row vector of p -> (T_1^a p)(0) on P_a.
        let mut functionals: Vec<DMatrix<f64>> = vec![DMatrix::from_element(1, 1, 1.0)];
        for a in 1..=max_degree {
            let next = &functionals[a - 1] * &ops[a].0;
            functionals.push(next);
        }
        let blocks = (0..=max_degree)
            .into_par_iter()
            .map(|n| build_block(n, &ops, &functionals, max_condition))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Intertwiner {
            ctx,
            blocks,
            max_condition,
        })
    }

    pub fn context(&self) -> &DunklContext {
        &self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.blocks.len() - 1
    }

    fn check_degree(&self, p: &Poly2) -> Result<(), Error> {
        let d = p.degree().unwrap_or(0) as usize;
        if d > self.max_degree() {
            return Err(Error::Precondition(format!(
                "degree {d} exceeds the cached maximum {}",
                self.max_degree()
            )));
        }
        Ok(())
    }

    fn apply_blocks(&self, p: &Poly2, pick: impl Fn(&Block) -> &DMatrix<f64>) -> Poly2 {
        let mut terms = Vec::new();
        for (n, pn) in p.homogeneous_parts() {
            let n = n as usize;
            let c = DVector::from_iterator(n + 1, (0..=n).map(|m| pn.coeff((n - m) as u32, m as u32)));
            let out = pick(&self.blocks[n]) * c;
            for m in 0..=n {
                terms.push((((n - m) as u32, m as u32), out[m]));
            }
        }
        Poly2::from_terms(terms)
    }

    pub fn v_inverse(&self, p: &Poly2) -> Result<Poly2, Error> {
        self.check_degree(p)?;
        Ok(self.apply_blocks(p, |b| &b.vinv))
    }

    pub fn v_apply(&self, p: &Poly2) -> Result<Poly2, Error> {
        self.check_degree(p)?;
        Ok(self.apply_blocks(p, |b| &b.v))
    }

    /// Coefficients of `V(<., w>^n / n!)` in the basis `x1^{n-m} x2^m`.
    pub fn repker_coefficients(&self, n: usize, w: &PlanePoint) -> DVector<f64> {
        let c = DVector::from_iterator(
            n + 1,
            (0..=n).map(|l| {
                w.x1().powi((n - l) as i32) * w.x2().powi(l as i32)
                    / (factorial((n - l) as u32) * factorial(l as u32))
            }),
        );
        &self.blocks[n].v * c
    }

    /// Degree-`n` component `V(<., w>^n / n!)(z)` of the kernel.
    pub fn repker(&self, n: usize, z: &PlanePoint, w: &PlanePoint) -> f64 {
        let coeffs = self.repker_coefficients(n, w);
        (0..=n)
            .map(|m| coeffs[m] * z.x1().powi((n - m) as i32) * z.x2().powi(m as i32))
            .sum()
    }

    /// Kernel series truncated at degree `n_max` (clamped to the cache).
    pub fn kernel_series(&self, z: &PlanePoint, w: &PlanePoint, n_max: usize) -> f64 {
        let top = n_max.min(self.max_degree());
        (0..=top).map(|n| self.repker(n, z, w)).sum()
    }

    /// Degree-`<= n_max` truncation of `E(., w)` as a polynomial.
    pub fn kernel_polynomial(&self, w: &PlanePoint, n_max: usize) -> Poly2 {
        let top = n_max.min(self.max_degree());
        let mut terms = Vec::new();
        for n in 0..=top {
            let coeffs = self.repker_coefficients(n, w);
            for m in 0..=n {
                terms.push((((n - m) as u32, m as u32), coeffs[m]));
            }
        }
        Poly2::from_terms(terms)
    }

    pub fn condition_limit(&self) -> f64 {
        self.max_condition
    }
}

fn operator_matrices(ctx: &DunklContext, d: usize) -> Result<(DMatrix<f64>, DMatrix<f64>), Error> {
    let rows = d.max(1);
    let mut t1 = DMatrix::zeros(rows, d + 1);
    let mut t2 = DMatrix::zeros(rows, d + 1);
    if d == 0 {
        return Ok((DMatrix::zeros(0, 1), DMatrix::zeros(0, 1)));
    }
    for l in 0..=d {
        let e = Poly2::monomial((d - l) as u32, l as u32, 1.0);
        let (a, b) = ctx.apply_both(&e)?;
        for m in 0..d {
            let (i, j) = ((d - 1 - m) as u32, m as u32);
            t1[(m, l)] = a.coeff(i, j);
            t2[(m, l)] = b.coeff(i, j);
        }
    }
    Ok((t1, t2))
}

fn build_block(
    n: usize,
    ops: &[(DMatrix<f64>, DMatrix<f64>)],
    functionals: &[DMatrix<f64>],
    max_condition: f64,
) -> Result<Block, Error> {
    let mut vinv = DMatrix::zeros(n + 1, n + 1);
    for m in 0..=n {
        // row_m = f_{n-m} T_2^{(n-m+1)} ... T_2^{(n)}
        let mut row = functionals[n - m].clone();
        for d in (n - m + 1)..=n {
            row = &row * &ops[d].1;
        }
        let scale = factorial((n - m) as u32) * factorial(m as u32);
        for l in 0..=n {
            vinv[(m, l)] = row[(0, l)] / scale;
        }
    }
    let v = vinv
        .clone()
        .try_inverse()
        .ok_or(Error::IllConditioned { cond: f64::INFINITY })?;
    let cond = one_norm(&vinv) * one_norm(&v);
    if !cond.is_finite() || cond > max_condition {
        return Err(Error::IllConditioned { cond });
    }
    Ok(Block { vinv, v })
}

pub(crate) fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
