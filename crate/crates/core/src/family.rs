//! The eight-parameter cubic family and its center / global-center
//! decision procedures.
//!
//! In complex notation `w = x + iy` the family is
//! `iẇ = w − A3·w̄² − A4·w³ − A5·w²w̄ − A6·w·w̄²` with
//! `A3 = a1 + i·a2`, `A4 = b1 + i·b2`, `A5 = c1 + i·c2`, `A6 = d1 + i·d2`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, parse_rational, rat, rational_text, Rational, VectorField};

pub const PARAM_NAMES: [&str; 8] = ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FamilyParams {
    pub a1: Rational,
    pub a2: Rational,
    pub b1: Rational,
    pub b2: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub d1: Rational,
    pub d2: Rational,
}

impl FamilyParams {
    pub fn zero() -> Self {
        Self::default()
    }

    /// From `[a1, a2, b1, b2, c1, c2, d1, d2]`.
    pub fn from_array(v: [Rational; 8]) -> Self {
        let [a1, a2, b1, b2, c1, c2, d1, d2] = v;
        Self { a1, a2, b1, b2, c1, c2, d1, d2 }
    }

    pub fn to_array(&self) -> [Rational; 8] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.b1.clone(),
            self.b2.clone(),
            self.c1.clone(),
            self.c2.clone(),
            self.d1.clone(),
            self.d2.clone(),
        ]
    }

    /// Sets parameters by name, e.g. `with(&[("b1", rat(1)), ("c1", rat(-4))])`;
    /// the rest stay zero.
    pub fn with(values: &[(&str, Rational)]) -> Self {
        let mut p = Self::zero();
        for (name, v) in values {
            *p.get_mut(name).unwrap_or_else(|| panic!("unknown parameter {name}")) = v.clone();
        }
        p
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut Rational> {
        Some(match name {
            "a1" => &mut self.a1,
            "a2" => &mut self.a2,
            "b1" => &mut self.b1,
            "b2" => &mut self.b2,
            "c1" => &mut self.c1,
            "c2" => &mut self.c2,
            "d1" => &mut self.d1,
            "d2" => &mut self.d2,
            _ => return None,
        })
    }

    /// `(name, value)` bindings for [`parse_poly`].
    pub fn bindings(&self) -> Vec<(&'static str, Rational)> {
        PARAM_NAMES.iter().copied().zip(self.to_array()).collect()
    }

    /// Unpacks the complex coefficients `A3..A6` given as `(re, im)` pairs.
    pub fn from_complex(
        a3: (Rational, Rational),
        a4: (Rational, Rational),
        a5: (Rational, Rational),
        a6: (Rational, Rational),
    ) -> Self {
        Self {
            a1: a3.0,
            a2: a3.1,
            b1: a4.0,
            b2: a4.1,
            c1: a5.0,
            c2: a5.1,
            d1: a6.0,
            d2: a6.1,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("params serialize")
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = PARAM_NAMES
            .iter()
            .zip(self.to_array())
            .map(|(n, v)| format!("{n}={}", rational_text(&v)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(8))?;
        for (n, v) in PARAM_NAMES.iter().zip(self.to_array()) {
            m.serialize_entry(n, &rational_text(&v))?;
        }
        m.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    a1: RawRational,
    a2: RawRational,
    b1: RawRational,
    b2: RawRational,
    c1: RawRational,
    c2: RawRational,
    d1: RawRational,
    d2: RawRational,
}

impl<'de> Deserialize<'de> for FamilyParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawParams::deserialize(d)?;
        let conv = |r: RawRational| -> std::result::Result<Rational, D::Error> {
            match r {
                RawRational::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
                RawRational::Int(i) => Ok(rat(i)),
            }
        };
        Ok(Self {
            a1: conv(raw.a1)?,
            a2: conv(raw.a2)?,
            b1: conv(raw.b1)?,
            b2: conv(raw.b2)?,
            c1: conv(raw.c1)?,
            c2: conv(raw.c2)?,
            d1: conv(raw.d1)?,
            d2: conv(raw.d2)?,
        })
    }
}

const FAMILY_P: &str = "y + 2*a1*x*y - a2*(x^2 - y^2) - (b2 + c2 + d2)*x^3 - (3*b1 + c1 - d1)*x^2*y \
                        + (3*b2 - c2 - d2)*x*y^2";
const FAMILY_Q: &str = "-x + a1*(x^2 - y^2) + 2*a2*x*y + (b1 + c1 + d1)*x^3 - (3*b2 + c2 - d2)*x^2*y \
                        + (-3*b1 + c1 + d1)*x*y^2 + (b2 - c2 + d2)*y^3";

/// The cubic system for the given parameters.
pub fn build_system(params: &FamilyParams) -> VectorField {
    let b = params.bindings();
    let p = parse_poly(FAMILY_P, ("x", "y"), &b).expect("family template parses");
    let q = parse_poly(FAMILY_Q, ("x", "y"), &b).expect("family template parses");
    VectorField::new(p, q).expect("linear part is nonzero")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterCase {
    I,
    Ii,
    Iii,
    Iv,
}

impl fmt::Display for CenterCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CenterCase::I => "i",
            CenterCase::Ii => "ii",
            CenterCase::Iii => "iii",
            CenterCase::Iv => "iv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GlobalStatement {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl GlobalStatement {
    pub const ALL: [GlobalStatement; 7] = [
        GlobalStatement::A,
        GlobalStatement::B,
        GlobalStatement::C,
        GlobalStatement::D,
        GlobalStatement::E,
        GlobalStatement::F,
        GlobalStatement::G,
    ];
}

impl fmt::Display for GlobalStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{self:?}").to_lowercase();
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterReport {
    pub matching_cases: BTreeSet<CenterCase>,
    pub f_value: Rational,
    pub g_value: Rational,
}

impl CenterReport {
    pub fn is_center(&self) -> bool {
        !self.matching_cases.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "matching_cases": self.matching_cases.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "F": rational_text(&self.f_value),
            "G": rational_text(&self.g_value),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalReport {
    pub matching_statements: BTreeSet<GlobalStatement>,
}

impl GlobalReport {
    pub fn is_global(&self) -> bool {
        !self.matching_statements.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "matching_statements": self.matching_statements.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// `F = a2²d2³ − 3a2²d2d1² + 6a2a1d2²d1 − 2a2a1d1³ − a1²d2³ + 3a1²d2d1²`.
pub fn f_value(p: &FamilyParams) -> Rational {
    let (a1, a2, d1, d2) = (&p.a1, &p.a2, &p.d1, &p.d2);
    let a2s = a2 * a2;
    let a1s = a1 * a1;
    let d1s = d1 * d1;
    let d2s = d2 * d2;
    &a2s * d2 * &d2s - rat(3) * &a2s * d2 * &d1s + rat(6) * a2 * a1 * &d2s * d1 - rat(2) * a2 * a1 * d1 * &d1s
        - &a1s * d2 * &d2s
        + rat(3) * &a1s * d2 * &d1s
}

/// `G = −a2²b2³ + 3a2²b2b1² + 6a2a1b2²b1 − 2a2a1b1³ + a1²b2³ − 3a1²b2b1²`.
pub fn g_value(p: &FamilyParams) -> Rational {
    let (a1, a2, b1, b2) = (&p.a1, &p.a2, &p.b1, &p.b2);
    let a2s = a2 * a2;
    let a1s = a1 * a1;
    let b1s = b1 * b1;
    let b2s = b2 * b2;
    -(&a2s * b2 * &b2s) + rat(3) * &a2s * b2 * &b1s + rat(6) * a2 * a1 * &b2s * b1 - rat(2) * a2 * a1 * b1 * &b1s
        + &a1s * b2 * &b2s
        - rat(3) * &a1s * b2 * &b1s
}

/// Every condition set (i)–(iv) for a center at the origin that `p` satisfies.
pub fn center_cases(p: &FamilyParams) -> CenterReport {
    let f = f_value(p);
    let g = g_value(p);
    let mut cases = BTreeSet::new();
    let base = p.c2.is_zero() && (&p.b2 * &p.d1 + &p.d2 * &p.b1).is_zero();
    if base && (rat(3) * &p.b1 - &p.d1).is_zero() {
        cases.insert(CenterCase::I);
    }
    if base && f.is_zero() {
        cases.insert(CenterCase::Ii);
    }
    if p.c1.is_zero() && p.c2.is_zero() && (&p.b2 - &p.d2).is_zero() && (&p.b1 + &p.d1).is_zero() {
        cases.insert(CenterCase::Iii);
    }
    if p.c2.is_zero() && p.d1.is_zero() && p.d2.is_zero() && g.is_zero() {
        cases.insert(CenterCase::Iv);
    }
    CenterReport {
        matching_cases: cases,
        f_value: f,
        g_value: g,
    }
}

/// Every statement (a)–(g) for a global center that `p` satisfies.
pub fn global_cases(p: &FamilyParams) -> GlobalReport {
    let z = |r: &Rational| r.is_zero();
    let three_b1 = rat(3) * &p.b1;
    let mut s = BTreeSet::new();
    // (a)
    if z(&p.a1)
        && z(&p.a2)
        && z(&p.b2)
        && z(&p.c2)
        && z(&p.d2)
        && p.d1 == three_b1
        && p.b1 == -&p.c1 / rat(4)
        && p.c1.is_negative()
    {
        s.insert(GlobalStatement::A);
    }
    // (b)
    if z(&p.a1) && z(&p.a2) && z(&p.b2) && z(&p.c1) && z(&p.c2) && z(&p.d2) && p.d1 == three_b1 && p.b1.is_negative() {
        s.insert(GlobalStatement::B);
    }
    // (c)
    if z(&p.a2) && z(&p.b1) && z(&p.b2) && z(&p.c2) && z(&p.d1) && z(&p.d2) && (&p.a1 * &p.a1 + &p.c1).is_negative() {
        s.insert(GlobalStatement::C);
    }
    // (d)
    if p.to_array().iter().all(Zero::is_zero) {
        s.insert(GlobalStatement::D);
    }
    // (e)
    let d1_e = -&p.b1 - &p.c1;
    if z(&p.a1)
        && z(&p.a2)
        && z(&p.b2)
        && z(&p.c2)
        && z(&p.d2)
        && p.d1 == d1_e
        && d1_e != three_b1
        && !(rat(2) * &p.b1 + &p.c1).is_positive()
        && p.b1.is_positive()
    {
        s.insert(GlobalStatement::E);
    }
    // (f)
    let a1s = &p.a1 * &p.a1;
    if z(&p.a2)
        && z(&p.b2)
        && z(&p.c1)
        && z(&p.c2)
        && z(&p.d2)
        && !z(&p.b1)
        && (&a1s + &three_b1 - &p.d1).is_negative()
        && (&a1s + rat(4) * (&p.b1 + &p.d1)).is_negative()
    {
        s.insert(GlobalStatement::F);
    }
    // (g)
    if z(&p.a1) && z(&p.a2) && z(&p.b1) && z(&p.b2) && z(&p.c2) && z(&p.d2) && p.d1 == -&p.c1 && p.d1.is_positive() {
        s.insert(GlobalStatement::G);
    }
    GlobalReport { matching_statements: s }
}

/// Reduced systems obtained in the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalFormTag {
    Aa1,
    Aa2,
    Aa3,
    Aa4,
    Bb5,
    Bb7,
}

impl NormalFormTag {
    pub const ALL: [NormalFormTag; 6] = [
        NormalFormTag::Aa1,
        NormalFormTag::Aa2,
        NormalFormTag::Aa3,
        NormalFormTag::Aa4,
        NormalFormTag::Bb5,
        NormalFormTag::Bb7,
    ];

    /// Names of the parameters that must vanish, and linear relations `lhs = rhs`.
    fn hypotheses(&self, p: &FamilyParams) -> (Vec<&'static str>, Vec<(&'static str, bool)>) {
        match self {
            NormalFormTag::Aa1 => (
                vec!["a1", "a2", "b2", "c2", "d2"],
                vec![
                    ("d1 = 3*b1", p.d1 == rat(3) * &p.b1),
                    ("b1 = -c1/4", p.b1 == -&p.c1 / rat(4)),
                ],
            ),
            NormalFormTag::Aa2 => (
                vec!["a1", "a2", "b2", "c1", "c2", "d2"],
                vec![("d1 = 3*b1", p.d1 == rat(3) * &p.b1)],
            ),
            NormalFormTag::Aa3 => (vec!["a2", "b1", "b2", "c2", "d1", "d2"], vec![]),
            NormalFormTag::Aa4 => (
                vec!["a1", "a2", "b2", "c2", "d2"],
                vec![("d1 = -b1 - c1", p.d1 == -&p.b1 - &p.c1)],
            ),
            NormalFormTag::Bb5 => (vec!["a2", "b2", "c1", "c2", "d2"], vec![]),
            NormalFormTag::Bb7 => (
                vec!["a1", "a2", "b1", "b2", "c2", "d2"],
                vec![("d1 = -c1", p.d1 == -&p.c1)],
            ),
        }
    }

    fn template(&self) -> (&'static str, &'static str) {
        match self {
            NormalFormTag::Aa1 => ("y - c1*x^2*y", "-x + c1*x*y^2"),
            NormalFormTag::Aa2 => ("y", "-x + 4*b1*x^3"),
            NormalFormTag::Aa3 => ("y + 2*a1*x*y - c1*x^2*y", "-x + a1*(x^2 - y^2) + c1*x^3 + c1*x*y^2"),
            NormalFormTag::Aa4 => ("y - (4*b1 + 2*c1)*x^2*y", "-x - 4*b1*x*y^2"),
            NormalFormTag::Bb5 => (
                "y + 2*a1*x*y - (3*b1 - d1)*x^2*y",
                "-x + a1*(x^2 - y^2) + (b1 + d1)*x^3 + (d1 - 3*b1)*x*y^2",
            ),
            NormalFormTag::Bb7 => ("y - 2*c1*x^2*y", "-x"),
        }
    }
}

impl fmt::Display for NormalFormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format!("{self:?}").to_lowercase())
    }
}

/// The reduced system `tag`, checked against [`build_system`].
pub fn normal_form(tag: NormalFormTag, params: &FamilyParams) -> Result<VectorField> {
    let (zeros, relations) = tag.hypotheses(params);
    let mut violated: Vec<String> = Vec::new();
    let bindings = params.bindings();
    for name in zeros {
        let v = &bindings.iter().find(|(n, _)| *n == name).expect("known name").1;
        if !v.is_zero() {
            violated.push(format!("{name} = 0"));
        }
    }
    violated.extend(relations.into_iter().filter(|(_, ok)| !ok).map(|(r, _)| r.to_string()));
    if !violated.is_empty() {
        return Err(Error::HypothesesViolated(format!("{tag}: {}", violated.join(", "))));
    }
    let (tp, tq) = tag.template();
    let vf = VectorField::new(
        parse_poly(tp, ("x", "y"), &bindings)?,
        parse_poly(tq, ("x", "y"), &bindings)?,
    )?;
    if vf != build_system(params) {
        return Err(Error::HypothesesViolated(format!("{tag}: reduced system differs from the family")));
    }
    Ok(vf)
}
