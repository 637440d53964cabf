//! Dunkl operators, the Dunkl Laplacian, the Fischer pairing and the
//! polynomial heat semigroup.

use crate::dihedral::DihedralGroup;
use crate::poly2::Poly2;
use crate::Error;

const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
struct RootTerm {
    root: [f64; 2],
    kappa: f64,
}

/// A group together with the per-root data the operators need.
#[derive(Debug, Clone)]
pub struct DunklContext {
    group: DihedralGroup,
    terms: Vec<RootTerm>,
}

impl DunklContext {
    pub fn new(group: DihedralGroup) -> Self {
        let terms = group
            .roots()
            .iter()
            .map(|r| RootTerm {
                root: r.vector,
                kappa: group.multiplicity(r.orbit),
            })
            .filter(|t| t.kappa != 0.0)
            .collect();
        DunklContext { group, terms }
    }

    pub fn group(&self) -> &DihedralGroup {
        &self.group
    }

    /// `T_xi p` for a unit direction `xi`.
    pub fn apply_dunkl(&self, xi: [f64; 2], p: &Poly2) -> Result<Poly2, Error> {
        let norm = xi[0].hypot(xi[1]);
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::Precondition(format!(
                "direction must have unit length, got |xi| = {norm}"
            )));
        }
        let mut out = p.directional_derivative(xi);
        for t in &self.terms {
            let c = t.kappa * (t.root[0] * xi[0] + t.root[1] * xi[1]);
            if c == 0.0 {
                continue;
            }
            out = &out + &p.divided_difference(t.root)?.scale(c);
        }
        Ok(out)
    }

    /// `(T_1 p, T_2 p)`, sharing the divided differences.
    pub fn apply_both(&self, p: &Poly2) -> Result<(Poly2, Poly2), Error> {
        let mut t1 = p.partial_x1();
        let mut t2 = p.partial_x2();
        for t in &self.terms {
            let dd = p.divided_difference(t.root)?;
            if t.root[0] != 0.0 {
                t1 = &t1 + &dd.scale(t.kappa * t.root[0]);
            }
            if t.root[1] != 0.0 {
                t2 = &t2 + &dd.scale(t.kappa * t.root[1]);
            }
        }
        Ok((t1, t2))
    }

    pub fn t1(&self, p: &Poly2) -> Result<Poly2, Error> {
        self.apply_dunkl([1.0, 0.0], p)
    }

    pub fn t2(&self, p: &Poly2) -> Result<Poly2, Error> {
        self.apply_dunkl([0.0, 1.0], p)
    }

    /// `T_1^i T_2^j p`.
    pub fn apply_power(&self, i: u32, j: u32, p: &Poly2) -> Result<Poly2, Error> {
        let mut q = p.clone();
        for _ in 0..j {
            q = self.t2(&q)?;
        }
        for _ in 0..i {
            q = self.t1(&q)?;
        }
        Ok(q)
    }

    /// `Delta_kappa = T_1^2 + T_2^2`.
    pub fn laplacian(&self, p: &Poly2) -> Result<Poly2, Error> {
        let (a, b) = self.apply_both(p)?;
        Ok(&self.t1(&a)? + &self.t2(&b)?)
    }

    /// `[p, q]_kappa = (p(T) q)(0)`.
    pub fn fischer_pair(&self, p: &Poly2, q: &Poly2) -> Result<f64, Error> {
        let mut total = 0.0;
        for (n, pn) in p.homogeneous_parts() {
            let qn = q.homogeneous_part(n);
            if qn.is_zero() {
                continue;
            }
            // powers[j] = T_2^j q_n
            let mut powers = vec![qn];
            for _ in 0..n {
                let next = self.t2(powers.last().expect("non-empty"))?;
                powers.push(next);
            }
            for (m, c) in pn.terms() {
                let mut r = powers[m.j as usize].clone();
                for _ in 0..m.i {
                    r = self.t1(&r)?;
                }
                total += c * r.coeff(0, 0);
            }
        }
        Ok(total)
    }

    /// `exp(-s Delta_kappa) p`, a finite sum.
    pub fn heat_semigroup(&self, s: f64, p: &Poly2) -> Result<Poly2, Error> {
        let mut out = p.clone();
        if s == 0.0 {
            return Ok(out);
        }
        let mut term = p.clone();
        let mut n = 1.0;
        while !term.is_zero() {
            term = self.laplacian(&term)?.scale(-s / n);
            out = &out + &term;
            n += 1.0;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::Multiplicity;

    fn ctx(k: usize, a: f64, b: f64) -> DunklContext {
        DunklContext::new(DihedralGroup::new(k, Multiplicity::new(a, b)).unwrap())
    }

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn zero_kappa_is_derivative() {
        let c = ctx(5, 0.0, 0.0);
        let q = p("x1^3*x2 - 2*x2^4 + x1");
        let xi = [0.6, 0.8];
        let lhs = c.apply_dunkl(xi, &q).unwrap();
        assert!(lhs.max_abs_diff(&q.directional_derivative(xi)) < 1e-14);
    }

    #[test]
    fn i2_examples() {
        let (a, b) = (0.3, 0.9);
        let c = ctx(2, a, b);
        let t = c.t1(&p("x1")).unwrap();
        assert!(t.max_abs_diff(&Poly2::constant(1.0 + 2.0 * b)) < 1e-15);
        assert!(c.t1(&p("x2")).unwrap().is_zero());
        assert!((c.fischer_pair(&p("x1"), &p("x1")).unwrap() - (1.0 + 2.0 * b)).abs() < 1e-14);
        assert_eq!(c.fischer_pair(&p("1"), &p("1")).unwrap(), 1.0);
        assert_eq!(c.fischer_pair(&p("x1"), &p("x2")).unwrap(), 0.0);
    }

    #[test]
    fn heat_examples() {
        let (a, b) = (0.4, 1.1);
        let c = ctx(2, a, b);
        let q = p("x1^2 + x2^2");
        let h = c.heat_semigroup(0.5, &q).unwrap();
        let expect = &q - &Poly2::constant(2.0 + 2.0 * (a + b));
        assert!(h.max_abs_diff(&expect) < 1e-14);
        let lin = p("3*x1 - x2 + 2");
        assert_eq!(c.heat_semigroup(0.7, &lin).unwrap(), lin);
        assert_eq!(c.heat_semigroup(0.0, &q).unwrap(), q);
    }

    #[test]
    fn rejects_non_unit_direction() {
        let c = ctx(3, 1.0, 1.0);
        assert!(c.apply_dunkl([1.0, 1.0], &p("x1")).is_err());
    }

    #[test]
    fn operators_commute() {
        for (k, a, b) in [(2, 0.5, 1.3), (3, 0.75, 0.75), (4, 1.0, 2.5), (5, 1.3, 1.3), (6, 0.5, 0.75)] {
            let c = ctx(k, a, b);
            for d in 0..=10u32 {
                for j in 0..=d {
                    let m = Poly2::monomial(d - j, j, 1.0);
                    let l = c.t1(&c.t2(&m).unwrap()).unwrap();
                    let r = c.t2(&c.t1(&m).unwrap()).unwrap();
                    let scale = 1.0 + l.max_abs_coeff();
                    assert!(l.max_abs_diff(&r) < 1e-10 * scale, "k={k} deg={d} j={j}");
                }
            }
        }
    }

    #[test]
    fn apply_both_matches_single_directions() {
        let c = ctx(6, 0.8, 1.4);
        let q = p("x1^4*x2 - 3*x1*x2^3 + x2^2 - 5*x1");
        let (a, b) = c.apply_both(&q).unwrap();
        assert!(a.max_abs_diff(&c.t1(&q).unwrap()) < 1e-13);
        assert!(b.max_abs_diff(&c.t2(&q).unwrap()) < 1e-13);
    }

    #[test]
    fn fischer_symmetric() {
        let c = ctx(4, 0.75, 1.3);
        for n in 0..=6u32 {
            for i in 0..=n {
                for j in 0..=n {
                    let a = Poly2::monomial(n - i, i, 1.0);
                    let b = Poly2::monomial(n - j, j, 1.0);
                    let l = c.fischer_pair(&a, &b).unwrap();
                    let r = c.fischer_pair(&b, &a).unwrap();
                    assert!((l - r).abs() < 1e-10 * (1.0 + l.abs()), "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn heat_inverse() {
        let c = ctx(3, 0.6, 0.6);
        for d in 0..=8u32 {
            for j in 0..=d {
                let m = Poly2::monomial(d - j, j, 1.0);
                let back = c
                    .heat_semigroup(-0.35, &c.heat_semigroup(0.35, &m).unwrap())
                    .unwrap();
                assert!(back.max_abs_diff(&m) < 1e-9, "deg {d}");
            }
        }
    }
}
