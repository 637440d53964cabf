//! Real bivariate polynomials.
//!
//! [`Poly2`] is the arena in which Dunkl operators, the Fischer pairing and
//! the intertwining oracle act. Coefficients are `f64`; after every
//! arithmetic operation coefficients smaller than `1e-13 * max|c|` are
//! dropped, so the zero polynomial is always the empty map.
//!
//! Terms are stored in graded-lexicographic order (total degree first, then
//! the power of `x1`), which fixes printing and iteration order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::dihedral::PlanePoint;

/// Largest exponent the parser accepts unless told otherwise.
pub const DEFAULT_MAX_DEGREE: u32 = 64;

/// Relative threshold below which coefficients are discarded.
pub const DROP_TOLERANCE: f64 = 1e-13;

const UNIT_ROOT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent {exponent} at byte {offset} exceeds the maximum degree {max}")]
    DegreeOverflow {
        offset: usize,
        exponent: u64,
        max: u32,
    },
    #[error("root must have unit length, got |root| = {norm}")]
    RootNotUnit { norm: f64 },
}

/// Exponent pair of the monomial `x1^i x2^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.i.cmp(&other.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A 2x2 real matrix acting on column vectors `(x1, x2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap2 {
    pub m: [[f64; 2]; 2],
}

impl LinearMap2 {
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        LinearMap2 {
            m: [[a11, a12], [a21, a22]],
        }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(d1: f64, d2: f64) -> Self {
        Self::new(d1, 0.0, 0.0, d2)
    }

    /// Counter-clockwise rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, -s, s, c)
    }

    /// The map `z -> conj(z) * e^{i theta}` in complex notation.
    pub fn conjugate_then_rotate(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s, s, -c)
    }

    pub fn apply(&self, x: [f64; 2]) -> [f64; 2] {
        [
            self.m[0][0] * x[0] + self.m[0][1] * x[1],
            self.m[1][0] * x[0] + self.m[1][1] * x[1],
        ]
    }

    pub fn compose(&self, other: &LinearMap2) -> LinearMap2 {
        let a = &self.m;
        let b = &other.m;
        LinearMap2 {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn transpose(&self) -> LinearMap2 {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn determinant(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Inverse, or `None` for a singular matrix.
    pub fn inverse(&self) -> Option<LinearMap2> {
        let det = self.determinant();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(Self::new(
            self.m[1][1] / det,
            -self.m[0][1] / det,
            -self.m[1][0] / det,
            self.m[0][0] / det,
        ))
    }

    pub fn max_abs_diff(&self, other: &LinearMap2) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.m[r][c] - other.m[r][c]).abs());
            }
        }
        d
    }
}

/// A real polynomial in `x1, x2`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, f64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: f64) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn x1() -> Self {
        Self::monomial(1, 0, 1.0)
    }

    pub fn x2() -> Self {
        Self::monomial(0, 1, 1.0)
    }

    /// `<x, d>^n` for a direction `d`.
    pub fn linear_form_power(d: [f64; 2], n: u32) -> Self {
        let line = Self::from_terms([((1, 0), d[0]), ((0, 1), d[1])]);
        line.pow(n)
    }

    /// Builds a polynomial from `((i, j), c)` pairs; repeated exponents add.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), f64)>,
    {
        let mut map = BTreeMap::new();
        for ((i, j), c) in terms {
            *map.entry(Monomial::new(i, j)).or_insert(0.0) += c;
        }
        Self::normalized(map)
    }

    fn normalized(mut terms: BTreeMap<Monomial, f64>) -> Self {
        let max = terms.values().fold(0.0_f64, |m, c| m.max(c.abs()));
        let cut = DROP_TOLERANCE * max;
        terms.retain(|_, c| *c != 0.0 && c.abs() >= cut);
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&Monomial::new(i, j)).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, f64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest coefficient-wise difference between two polynomials.
    pub fn max_abs_diff(&self, other: &Poly2) -> f64 {
        let mut d: f64 = 0.0;
        for (m, c) in &self.terms {
            d = d.max((c - other.terms.get(m).copied().unwrap_or(0.0)).abs());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                d = d.max(c.abs());
            }
        }
        d
    }

    pub fn scale(&self, s: f64) -> Poly2 {
        if s == 0.0 {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn homogeneous_part(&self, n: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }

    /// Homogeneous components `(n, p_n)` in increasing degree, zero parts skipped.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Poly2)> {
        let mut out: Vec<(u32, Poly2)> = Vec::new();
        for (m, c) in &self.terms {
            let n = m.degree();
            match out.last_mut() {
                Some((d, p)) if *d == n => {
                    p.terms.insert(*m, *c);
                }
                _ => {
                    let mut p = Poly2::zero();
                    p.terms.insert(*m, *c);
                    out.push((n, p));
                }
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut acc = Poly2::constant(1.0);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_x1(&self) -> Poly2 {
        Self::normalized(
            self.terms
                .iter()
                .filter(|(m, _)| m.i > 0)
                .map(|(m, c)| (Monomial::new(m.i - 1, m.j), c * m.i as f64))
                .collect(),
        )
    }

    pub fn partial_x2(&self) -> Poly2 {
        Self::normalized(
            self.terms
                .iter()
                .filter(|(m, _)| m.j > 0)
                .map(|(m, c)| (Monomial::new(m.i, m.j - 1), c * m.j as f64))
                .collect(),
        )
    }

    /// Derivative in direction `xi` (not required to be a unit vector).
    pub fn directional_derivative(&self, xi: [f64; 2]) -> Poly2 {
        &self.partial_x1().scale(xi[0]) + &self.partial_x2().scale(xi[1])
    }

    /// Horner evaluation: outer loop over powers of `x1`, inner over `x2`.
    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        let Some(deg) = self.degree() else {
            return 0.0;
        };
        let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            rows[m.i as usize].push((m.j, *c));
        }
        let mut acc = 0.0;
        for row in rows.iter_mut().rev() {
            row.sort_by(|a, b| b.0.cmp(&a.0));
            let mut inner = 0.0;
            let mut power = row.first().map_or(0, |t| t.0);
            for &(j, c) in row.iter() {
                while power > j {
                    inner *= x2;
                    power -= 1;
                }
                inner += c;
            }
            for _ in 0..power {
                inner *= x2;
            }
            acc = acc * x1 + inner;
        }
        acc
    }

    pub fn eval_at(&self, x: &PlanePoint) -> f64 {
        self.eval(x.x1(), x.x2())
    }

    /// Returns `x -> p(M x)`, expanded.
    pub fn compose_linear(&self, map: &LinearMap2) -> Poly2 {
        let Some(deg) = self.degree() else {
            return Poly2::zero();
        };
        let deg = deg as usize;
        // Homogeneous polynomials of degree d are stored as dense vectors
        // indexed by the power of x2.
        let row1 = [map.m[0][0], map.m[0][1]];
        let row2 = [map.m[1][0], map.m[1][1]];
        let pow1 = linear_powers(row1, deg);
        let pow2 = linear_powers(row2, deg);
        let mut acc: Vec<Vec<f64>> = (0..=deg).map(|d| vec![0.0; d + 1]).collect();
        for (m, c) in &self.terms {
            let a = &pow1[m.i as usize];
            let b = &pow2[m.j as usize];
            let out = &mut acc[m.degree() as usize];
            for (s, &av) in a.iter().enumerate() {
                if av == 0.0 {
                    continue;
                }
                let cav = c * av;
                for (t, &bv) in b.iter().enumerate() {
                    out[s + t] += cav * bv;
                }
            }
        }
        dense_to_poly(&acc)
    }

    /// `(p(x) - p(sigma x)) / <root, x>` where `sigma` is the reflection in
    /// the mirror orthogonal to `root`.
    ///
    /// Coordinates are rotated so that the root becomes `e1`; there the
    /// numerator is twice the odd-in-`y1` part and division is monomial-wise.
    pub fn divided_difference(&self, root: [f64; 2]) -> Result<Poly2, PolyError> {
        let norm = root[0].hypot(root[1]);
        if (norm - 1.0).abs() > UNIT_ROOT_TOLERANCE {
            return Err(PolyError::RootNotUnit { norm });
        }
        if self.is_zero() {
            return Ok(Poly2::zero());
        }
        // y = R x with y1 = <root, x>.
        let to_axis = LinearMap2::new(root[0], root[1], -root[1], root[0]);
        let in_axis = self.compose_linear(&to_axis.transpose());
        let quotient: BTreeMap<Monomial, f64> = in_axis
            .terms
            .iter()
            .filter(|(m, _)| m.i % 2 == 1)
            .map(|(m, c)| (Monomial::new(m.i - 1, m.j), 2.0 * c))
            .collect();
        Ok(Self::normalized(quotient).compose_linear(&to_axis))
    }

    /// Parses the polynomial grammar with a caller-chosen exponent cap.
    pub fn parse_with_max_degree(text: &str, max_degree: u32) -> Result<Poly2, PolyError> {
        Parser::new(text, max_degree).parse()
    }
}

/// Powers `0..=n` of the linear form `r0 x1 + r1 x2`, dense by x2 power.
fn linear_powers(r: [f64; 2], n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(vec![1.0]);
    for d in 1..=n {
        let prev: &Vec<f64> = &out[d - 1];
        let mut next = vec![0.0; d + 1];
        for (t, &v) in prev.iter().enumerate() {
            next[t] += v * r[0];
            next[t + 1] += v * r[1];
        }
        out.push(next);
    }
    out
}

fn dense_to_poly(acc: &[Vec<f64>]) -> Poly2 {
    let mut terms = BTreeMap::new();
    for (d, row) in acc.iter().enumerate() {
        for (t, &c) in row.iter().enumerate() {
            if c != 0.0 {
                terms.insert(Monomial::new((d - t) as u32, t as u32), c);
            }
        }
    }
    Poly2::normalized(terms)
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            *terms.entry(*m).or_insert(0.0) += c;
        }
        Poly2::normalized(terms)
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            *terms.entry(*m).or_insert(0.0) -= c;
        }
        Poly2::normalized(terms)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                *terms
                    .entry(Monomial::new(a.i + b.i, a.j + b.j))
                    .or_insert(0.0) += ca * cb;
            }
        }
        Poly2::normalized(terms)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(-1.0)
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        &self + &rhs
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        &self - &rhs
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

/// Formats like C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= 17 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if *c < 0.0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.degree() == 0 || mag != 1.0 {
                factors.push(format_g17(mag));
            }
            for (name, e) in [("x1", m.i), ("x2", m.j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for Poly2 {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly2::parse_with_max_degree(s, DEFAULT_MAX_DEGREE)
    }
}

/// Parses `text` with the default exponent cap.
pub fn parse_poly(text: &str) -> Result<Poly2, PolyError> {
    text.parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_degree: u32,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, max_degree: u32) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            max_degree,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly2, PolyError> {
        let mut terms: Vec<((u32, u32), f64)> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1.0;
            match self.peek() {
                None if first => return self.error("empty polynomial"),
                None => return self.error("expected a term after the operator"),
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    sign = -1.0;
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(_) => return self.error("expected '+' or '-'"),
            }
            let (mono, c) = self.term()?;
            terms.push((mono, sign * c));
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(Poly2::from_terms(terms))
    }

    fn term(&mut self) -> Result<((u32, u32), f64), PolyError> {
        let mut coeff = 1.0;
        let mut have_factor = false;
        if matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'.') {
            coeff = self.number()?;
            have_factor = true;
        }
        let (mut i, mut j) = (0u32, 0u32);
        loop {
            let save = self.pos;
            let starred = if self.peek() == Some(b'*') {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.peek() {
                Some(b'x') => {
                    let var_at = self.pos;
                    self.pos += 1;
                    let which = match self.src.get(self.pos) {
                        Some(b'1') => 1,
                        Some(b'2') => 2,
                        _ => return self.error("expected variable x1 or x2"),
                    };
                    self.pos += 1;
                    let e = self.exponent(var_at)?;
                    let slot = if which == 1 { &mut i } else { &mut j };
                    let total = *slot as u64 + e as u64;
                    if total > self.max_degree as u64 {
                        return Err(PolyError::DegreeOverflow {
                            offset: var_at,
                            exponent: total,
                            max: self.max_degree,
                        });
                    }
                    *slot = total as u32;
                    have_factor = true;
                }
                Some(b) if starred && (b.is_ascii_digit() || b == b'.') => {
                    coeff *= self.number()?;
                    have_factor = true;
                }
                _ if starred => return self.error("expected a factor after '*'"),
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        if !have_factor {
            return self.error("expected a number or variable");
        }
        if i + j > self.max_degree {
            return Err(PolyError::DegreeOverflow {
                offset: self.pos,
                exponent: (i + j) as u64,
                max: self.max_degree,
            });
        }
        Ok(((i, j), coeff))
    }

    fn exponent(&mut self, var_at: usize) -> Result<u32, PolyError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer exponent");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<u64>() {
            Ok(e) if e <= self.max_degree as u64 => Ok(e as u32),
            Ok(e) => Err(PolyError::DegreeOverflow {
                offset: var_at,
                exponent: e,
                max: self.max_degree,
            }),
            Err(_) => Err(PolyError::DegreeOverflow {
                offset: var_at,
                exponent: u64::MAX,
                max: self.max_degree,
            }),
        }
    }

    fn number(&mut self) -> Result<f64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        let src = self.src;
        let digits = |p: &mut usize| {
            let s = *p;
            while *p < src.len() && src[*p].is_ascii_digit() {
                *p += 1;
            }
            *p > s
        };
        let mut p = self.pos;
        let int = digits(&mut p);
        let mut frac = false;
        if p < src.len() && src[p] == b'.' {
            p += 1;
            frac = digits(&mut p);
        }
        if !int && !frac {
            return self.error("malformed number");
        }
        if p < src.len() && (src[p] == b'e' || src[p] == b'E') {
            let mut q = p + 1;
            if q < src.len() && (src[q] == b'+' || src[q] == b'-') {
                q += 1;
            }
            if digits(&mut q) {
                p = q;
            }
        }
        let text = std::str::from_utf8(&src[start..p]).expect("ascii number");
        self.pos = p;
        text.parse::<f64>().or_else(|_| {
            self.pos = start;
            self.error("malformed number")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        let one = p("1");
        assert_eq!(one.degree(), Some(0));
        assert_eq!(one.coeff(0, 0), 1.0);

        let q = p("x1^2 - x2^2");
        assert_eq!(q.coeff(2, 0), 1.0);
        assert_eq!(q.coeff(0, 2), -1.0);
        assert_eq!(q.len(), 2);

        let r = p("3*x1*x2^3 + 0.5");
        assert_eq!(r.coeff(1, 3), 3.0);
        assert_eq!(r.coeff(0, 0), 0.5);
        assert_eq!(r.degree(), Some(4));
    }

    #[test]
    fn optional_star_and_whitespace() {
        assert_eq!(p(" 2 x1 ^ 2 x2 "), Poly2::monomial(2, 1, 2.0));
        assert_eq!(p("-x2^1"), Poly2::monomial(0, 1, -1.0));
        assert_eq!(p("1.5e-3*x1"), Poly2::monomial(1, 0, 1.5e-3));
        assert_eq!(p("x1 - x1"), Poly2::zero());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match "x1 + + x2".parse::<Poly2>() {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("x3".parse::<Poly2>(), Err(PolyError::Syntax { .. })));
        assert!(matches!("".parse::<Poly2>(), Err(PolyError::Syntax { .. })));
        assert!(matches!("2 3".parse::<Poly2>(), Err(PolyError::Syntax { .. })));
        assert!(matches!("x1^".parse::<Poly2>(), Err(PolyError::Syntax { .. })));
        assert!(matches!(
            "x1^65".parse::<Poly2>(),
            Err(PolyError::DegreeOverflow { offset: 0, .. })
        ));
        assert!(matches!(
            "x1^40*x2^40".parse::<Poly2>(),
            Err(PolyError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("x1^2 - x2^2").eval(1.0, 1.0), 0.0);
        assert_eq!(p("1").eval(-3.0, 7.0), 1.0);
        assert_eq!(p("3*x1*x2^3").eval(2.0, 1.0), 6.0);
        assert_eq!(p("x1^3*x2 + 2*x2^2 + x1").eval(2.0, 3.0), 24.0 + 18.0 + 2.0);
        assert_eq!(Poly2::zero().eval(1.0, 2.0), 0.0);
    }

    #[test]
    fn compose_examples() {
        let q = p("x1^2 - x2^2");
        let rot = LinearMap2::rotation(FRAC_PI_2);
        assert!(q.compose_linear(&rot).max_abs_diff(&p("x2^2 - x1^2")) < 1e-15);

        let r = p("x1*x2");
        assert_eq!(r.compose_linear(&LinearMap2::diag(1.0, -1.0)), p("-x1*x2"));

        let s = p("3*x1^4*x2 - 2*x2^3 + 0.25*x1 + 7");
        assert_eq!(s.compose_linear(&LinearMap2::identity()), s);
    }

    #[test]
    fn divided_difference_examples() {
        for theta in [0.0f64, 0.3, 1.1, 2.9] {
            let root = [theta.cos(), theta.sin()];
            let line = Poly2::from_terms([((1, 0), root[0]), ((0, 1), root[1])]);
            let dd = line.divided_difference(root).unwrap();
            assert!(dd.max_abs_diff(&Poly2::constant(2.0)) < 1e-14);
            assert!(Poly2::constant(4.0).divided_difference(root).unwrap().is_zero());
        }
        assert!(p("x1^2").divided_difference([0.0, 1.0]).unwrap().is_zero());
        assert!(matches!(
            p("x1").divided_difference([1.0, 1.0]),
            Err(PolyError::RootNotUnit { .. })
        ));
    }

    #[test]
    fn printer_is_canonical() {
        assert_eq!(p("x2^2 - x1^2 + 1").to_string(), "-x1^2 + x2^2 + 1");
        assert_eq!(p("-x2^2 - 3*x1 + x1*x2").to_string(), "x1*x2 - x2^2 - 3*x1");
        assert_eq!(p("0.1*x1*x2").to_string(), "0.10000000000000001*x1*x2");
        assert_eq!(Poly2::zero().to_string(), "0");
        assert_eq!(p("9.5367431640625e-7 + x1").to_string(), "x1 + 9.5367431640625e-07");
    }

    #[test]
    fn g17_matches_c_printf() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(0.5), "0.5");
        assert_eq!(format_g17(123456.0), "123456");
        assert_eq!(format_g17(1e17), "1e+17");
        assert_eq!(format_g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(format_g17(0.0001), "0.0001");
        assert_eq!(format_g17(std::f64::consts::E), "2.7182818284590451");
    }

    #[test]
    fn pow_and_linear_forms() {
        let q = Poly2::linear_form_power([1.0, 2.0], 3);
        assert_eq!(q.coeff(3, 0), 1.0);
        assert_eq!(q.coeff(2, 1), 6.0);
        assert_eq!(q.coeff(1, 2), 12.0);
        assert_eq!(q.coeff(0, 3), 8.0);
        assert_eq!(Poly2::x1().pow(0), Poly2::constant(1.0));
    }

    #[test]
    fn drop_tolerance_is_relative() {
        let q = Poly2::from_terms([((0, 0), 1.0), ((1, 0), 1e-14), ((0, 1), 2e-13)]);
        assert_eq!(q.len(), 2);
        assert_eq!(q.coeff(1, 0), 0.0);
    }
}
