//! Exact-or-interval real algebraic numbers of degree at most two.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::univariate::UPoly;
use super::{rat, rational_text, rational_to_f64, Rational};

/// A real number known exactly (rational or quadratic surd) or through an
/// isolating interval of a rational polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    /// `a + b * sqrt(c)` with integer `c > 1` free of small square factors.
    Surd { a: Rational, b: Rational, c: BigInt },
    /// Root in the open interval `(lo, hi)`.
    Interval { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn to_f64(&self) -> f64 {
        match self {
            RealRoot::Exact(r) => rational_to_f64(r),
            RealRoot::Surd { a, b, c } => {
                rational_to_f64(a) + rational_to_f64(b) * rational_to_f64(&Rational::from_integer(c.clone())).sqrt()
            }
            RealRoot::Interval { lo, hi } => (rational_to_f64(lo) + rational_to_f64(hi)) / 2.0,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealRoot::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RealRoot::Exact(r) if r.is_zero())
    }

    /// Sign: -1, 0 or 1. Intervals never contain zero once refined past it.
    pub fn signum(&self) -> i8 {
        let v = self.to_f64();
        match self {
            RealRoot::Exact(r) => sign(r),
            _ if v > 0.0 => 1,
            _ if v < 0.0 => -1,
            _ => 0,
        }
    }

    /// `a + b * sqrt(d)` for rational `d >= 0`, simplified to an exact value
    /// when `d` is a rational square.
    pub fn from_sqrt(a: Rational, b: Rational, d: &Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return RealRoot::Exact(a);
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let n = d.numer() * d.denom();
        let (outside, inside) = extract_square(&n);
        let coeff = b * Rational::new(outside, d.denom().clone());
        if inside.is_one() {
            RealRoot::Exact(a + coeff)
        } else {
            RealRoot::Surd { a, b: coeff, c: inside }
        }
    }

    pub fn text(&self) -> String {
        match self {
            RealRoot::Exact(r) => rational_text(r),
            RealRoot::Surd { a, b, c } => {
                let mag = b.abs();
                let surd = if mag.is_one() {
                    format!("sqrt({c})")
                } else {
                    format!("{}*sqrt({c})", rational_text(&mag))
                };
                if a.is_zero() {
                    if b.is_negative() {
                        format!("-{surd}")
                    } else {
                        surd
                    }
                } else {
                    let op = if b.is_negative() { "-" } else { "+" };
                    format!("{} {op} {surd}", rational_text(a))
                }
            }
            RealRoot::Interval { lo, hi } => format!("[{}, {}]", rational_text(lo), rational_text(hi)),
        }
    }
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Writes `n = outside^2 * inside`, pulling out square factors found by
/// trial division up to 10^4 and an exact square remainder.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut outside = BigInt::one();
    let mut inside = n.clone();
    let r = inside.sqrt();
    if &r * &r == inside {
        return (r, BigInt::one());
    }
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p <= limit {
        let sq = &p * &p;
        if sq > inside {
            break;
        }
        while (&inside % &sq).is_zero() {
            inside /= &sq;
            outside *= &p;
        }
        p += 1;
    }
    let r = inside.sqrt();
    if &r * &r == inside {
        outside *= r;
        inside = BigInt::one();
    }
    (outside, inside)
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for RealRoot {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RealRoot::Interval { lo, hi } => [rational_text(lo), rational_text(hi)].serialize(s),
            _ => s.serialize_str(&self.text()),
        }
    }
}

/// Interval width used when a root has no closed form.
pub fn isolation_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// All distinct real roots of `p` with multiplicities, in increasing order.
///
/// Roots of square-free factors of degree at most two (after removing
/// rational roots) are returned in closed form; others as intervals of
/// width at most 1e-12.
pub fn real_roots(p: &UPoly) -> Vec<(RealRoot, u32)> {
    let mut out: Vec<(RealRoot, u32)> = Vec::new();
    for (factor, mult) in p.square_free_factors() {
        let mut rest = factor.clone();
        for r in factor.rational_roots() {
            rest = rest.div_rem(&UPoly::linear_root(&r)).0;
            out.push((RealRoot::Exact(r), mult));
        }
        match rest.degree() {
            d if d < 1 => {}
            1 => {
                let c = rest.coeffs();
                out.push((RealRoot::Exact(-&c[0] / &c[1]), mult));
            }
            2 => {
                let c = rest.coeffs();
                let (a, b, cc) = (&c[2], &c[1], &c[0]);
                let disc = b * b - rat(4) * a * cc;
                if !disc.is_negative() {
                    let center = -b / (rat(2) * a);
                    let half = Rational::one() / (rat(2) * a.abs());
                    out.push((RealRoot::from_sqrt(center.clone(), -half.clone(), &disc), mult));
                    out.push((RealRoot::from_sqrt(center, half, &disc), mult));
                }
            }
            _ => {
                let w = isolation_width();
                for (lo, hi) in rest.isolate_real_roots() {
                    let (lo, hi) = rest.refine_root(lo, hi, &w);
                    let root = if lo == hi {
                        RealRoot::Exact(lo)
                    } else {
                        RealRoot::Interval { lo, hi }
                    };
                    out.push((root, mult));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.to_f64().partial_cmp(&b.0.to_f64()).expect("finite roots"));
    out
}
