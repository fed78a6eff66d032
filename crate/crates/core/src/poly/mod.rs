//! Exact bivariate polynomials over the rationals.
//!
//! [`Poly2`] is a sparse map from exponent pairs to nonzero [`Rational`]
//! coefficients. Terms are stored in canonical order (total degree
//! descending, then the power of the first variable descending), so
//! iteration and printing are deterministic.

mod parse;
pub mod roots;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::parse_poly;

/// Exact rational number (always reduced, positive denominator).
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text of a rational: `p` or `p/q`.
pub fn rational_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: divide in the float domain.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// A variable of a bivariate polynomial. The first variable is `x` (or `u`
/// in chart coordinates), the second `y` (or `v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
}

/// Exponent pair ordered so that the `BTreeMap` walks terms canonically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.i.cmp(&self.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::x(),
            Var::Y => Self::y(),
        }
    }

    /// `c * x^i * y^j`.
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    /// Builds a polynomial from `(coefficient, i, j)` triples; duplicates add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, u32, u32)>,
    {
        let mut p = Self::zero();
        for (c, i, j) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                existing.is_zero()
            }
            None => {
                self.terms.insert(m, c);
                false
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `-1` for the zero polynomial.
    pub fn degree(&self) -> i32 {
        self.terms.keys().next().map_or(-1, |m| m.degree() as i32)
    }

    /// Lowest total degree of a stored term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Highest power of `var` appearing, `-1` for zero.
    pub fn degree_in(&self, var: Var) -> i32 {
        self.terms
            .keys()
            .map(|m| match var {
                Var::X => m.i as i32,
                Var::Y => m.j as i32,
            })
            .max()
            .unwrap_or(-1)
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
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

    /// Formal partial derivative.
    pub fn partial(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            match var {
                Var::X if m.i > 0 => {
                    out.add_term(Monomial::new(m.i - 1, m.j), c * rat(m.i as i64));
                }
                Var::Y if m.j > 0 => {
                    out.add_term(Monomial::new(m.i, m.j - 1), c * rat(m.j as i64));
                }
                _ => {}
            }
        }
        out
    }

    /// `self(sx, sy)`, fully expanded.
    pub fn substitute(&self, sx: &Poly2, sy: &Poly2) -> Self {
        let max_i = self.degree_in(Var::X).max(0) as usize;
        let max_j = self.degree_in(Var::Y).max(0) as usize;
        let mut px = Vec::with_capacity(max_i + 1);
        px.push(Poly2::one());
        for k in 1..=max_i {
            px.push(&px[k - 1] * sx);
        }
        let mut py = Vec::with_capacity(max_j + 1);
        py.push(Poly2::one());
        for k in 1..=max_j {
            py.push(&py[k - 1] * sy);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let t = (&px[m.i as usize] * &py[m.j as usize]).scale(c);
            out = out + t;
        }
        out
    }

    /// Exchanges the two variables.
    pub fn swap_vars(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.j, m.i), c.clone()))
                .collect(),
        }
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True when `var^k` divides every term.
    pub fn divisible_by(&self, var: Var, k: u32) -> bool {
        self.terms.keys().all(|m| match var {
            Var::X => m.i >= k,
            Var::Y => m.j >= k,
        })
    }

    /// Exact quotient by `var^k`.
    pub fn divide_monomial(&self, var: Var, k: u32) -> Result<Self> {
        if !self.divisible_by(var, k) {
            return Err(Error::NotDivisible { var, power: k });
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let m = match var {
                        Var::X => Monomial::new(m.i - k, m.j),
                        Var::Y => Monomial::new(m.i, m.j - k),
                    };
                    (m, c.clone())
                })
                .collect(),
        })
    }

    /// `v^n * a(1/v, u/v)` as a polynomial in `(u, v)`.
    ///
    /// A term `x^i y^j` becomes `u^j v^(n-i-j)`.
    pub fn dilate_chart_numerator(&self, n: u32) -> Result<Self> {
        let d = self.degree();
        if d > n as i32 {
            return Err(Error::DegreeTooLow { n, degree: d as u32 });
        }
        Ok(Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (c.clone(), m.j, n - m.degree())),
        ))
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * pow_rat(x, m.i) * pow_rat(y, m.j);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rational_to_f64(c) * x.powi(m.i as i32) * y.powi(m.j as i32))
            .sum()
    }

    /// Canonical text using custom variable names.
    pub fn to_text(&self, xname: &str, yname: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if m.degree() == 0 || !mag.is_one() {
                factors.push(rational_text(&mag));
            }
            for (name, e) in [(xname, m.i), (yname, m.j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses canonical (or any reasonable infix) text in variables `x`, `y`.
    pub fn parse(text: &str) -> Result<Self> {
        parse_poly(text, ("x", "y"), &[])
    }
}

fn pow_rat(base: &Rational, e: u32) -> Rational {
    num_traits::pow(base.clone(), e as usize)
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x", "y"))
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(mut self, rhs: Poly2) -> Poly2 {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(mut self, rhs: Poly2) -> Poly2 {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.i + mb.i, ma.j + mb.j), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

/// Planar polynomial vector field `(ẋ, ẏ) = (p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    pub p: Poly2,
    pub q: Poly2,
}

impl VectorField {
    pub fn new(p: Poly2, q: Poly2) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroField);
        }
        Ok(Self { p, q })
    }

    /// `max(deg p, deg q)`.
    pub fn effective_degree(&self) -> u32 {
        self.p.degree().max(self.q.degree()).max(0) as u32
    }

    /// Lowest order of a nonzero homogeneous component of `(p, q)`.
    pub fn order(&self) -> Option<u32> {
        match (self.p.order(), self.q.order()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn component(&self, var: Var) -> &Poly2 {
        match var {
            Var::X => &self.p,
            Var::Y => &self.q,
        }
    }

    /// Multiplies both components by a nonzero constant.
    pub fn scale(&self, c: &Rational) -> Result<Self> {
        Self::new(self.p.scale(c), self.q.scale(c))
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (self.p.eval(x, y), self.q.eval(x, y))
    }

    pub fn is_equilibrium(&self, x: &Rational, y: &Rational) -> bool {
        self.p.eval(x, y).is_zero() && self.q.eval(x, y).is_zero()
    }

    /// Divergence `∂p/∂x + ∂q/∂y`.
    pub fn divergence(&self) -> Poly2 {
        self.p.partial(Var::X) + self.q.partial(Var::Y)
    }

    /// Canonical two-line text with the given variable names.
    pub fn to_text(&self, xname: &str, yname: &str) -> String {
        format!(
            "d{xname}/dt = {}\nd{yname}/dt = {}",
            self.p.to_text(xname, yname),
            self.q.to_text(xname, yname)
        )
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x", "y"))
    }
}

/// 2x2 exact matrix, row-major.
pub type Matrix2 = [[Rational; 2]; 2];

pub fn matrix_text(m: &Matrix2) -> [[String; 2]; 2] {
    [
        [rational_text(&m[0][0]), rational_text(&m[0][1])],
        [rational_text(&m[1][0]), rational_text(&m[1][1])],
    ]
}
