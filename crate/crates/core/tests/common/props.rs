//! Property checks shared by the `properties` and `acceptance` targets.

use gcenter::compactify::{chart_field_with_degree, ChartId};
use gcenter::desing::{time_rescale, vertical_blowup};
use gcenter::family::{center_cases, global_cases, FamilyParams};
use gcenter::poly::{rat, ratio, Rational};
use gcenter::{Poly2, Var, VectorField};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

pub const CASES: u32 = 256;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Polynomials whose monomials have total degree in `lo..=hi`.
pub fn poly(lo: u32, hi: u32) -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0..=hi, 0..=hi, rational()), 0..8).prop_map(move |terms| {
        Poly2::from_terms(
            terms
                .into_iter()
                .filter(|(i, j, _)| (lo..=hi).contains(&(i + j)))
                .map(|(i, j, c)| (c, i, j)),
        )
    })
}

pub fn field(lo: u32, hi: u32) -> impl Strategy<Value = VectorField> {
    (poly(lo, hi), poly(lo, hi))
        .prop_filter_map("nonzero field", |(p, q)| VectorField::new(p, q).ok())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn check_ring_laws(a: &Poly2, b: &Poly2, c: &Poly2) -> Result<(), TestCaseError> {
    ensure(a + b == b + a, || "addition is not commutative".into())?;
    ensure(a * b == b * a, || "multiplication is not commutative".into())?;
    ensure(&(a + b) + c == a + &(b + c), || "addition is not associative".into())?;
    ensure(&(a * b) * c == a * &(b * c), || "multiplication is not associative".into())?;
    ensure(a * &(b + c) == &(a * b) + &(a * c), || "distributivity fails".into())?;
    ensure((a - a).is_zero(), || "a - a is not zero".into())?;
    ensure(a * &Poly2::one() == *a, || "one is not neutral".into())?;
    ensure(a + &-b == a - b, || "negation disagrees with subtraction".into())
}

/// With `σ(u1, v1) = (u1, u1 v1)`, the blown-up field `Y` satisfies
/// `X∘σ = Dσ · Y`.
pub fn check_pushforward(vf: &VectorField) -> Result<(), TestCaseError> {
    let y = vertical_blowup(vf).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let u1 = Poly2::x();
    let v1 = Poly2::y();
    let sv = &u1 * &v1;
    let p_sigma = vf.p.substitute(&u1, &sv);
    let q_sigma = vf.q.substitute(&u1, &sv);
    ensure(p_sigma == y.p, || format!("first component of {vf} does not push forward"))?;
    ensure(q_sigma == &(&v1 * &y.p) + &(&u1 * &y.q), || {
        format!("second component of {vf} does not push forward")
    })
}

/// `v̇` is divisible by `v` in every chart, for every admissible `n`.
pub fn check_v_divisibility(vf: &VectorField, extra: u32) -> Result<(), TestCaseError> {
    let n = vf.effective_degree() + extra;
    for chart in [ChartId::U1, ChartId::U2, ChartId::V1, ChartId::V2] {
        let cf = chart_field_with_degree(vf, chart, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure(cf.field.q.divisible_by(Var::Y, 1), || format!("v does not divide v̇ in {chart} for {vf}"))?;
    }
    Ok(())
}

/// On `u ≠ 0, v ≠ 0` the U1 field, carried over by `(u, v) ↦ (1/u, v/u)`,
/// is parallel to the U2 field.
pub fn check_chart_compatibility(vf: &VectorField, points: &[(Rational, Rational)]) -> Result<(), TestCaseError> {
    let n = vf.effective_degree();
    let u1 = chart_field_with_degree(vf, ChartId::U1, n).unwrap().field;
    let u2 = chart_field_with_degree(vf, ChartId::U2, n).unwrap().field;
    for (u, v) in points {
        let (du, dv) = u1.eval(u, v);
        let pushed_u = -(&du / (u * u));
        let pushed_v = &dv / u - (v * &du) / (u * u);
        let (eu, ev) = u2.eval(&(rat(1) / u), &(v / u));
        let cross = &pushed_u * &ev - &pushed_v * &eu;
        ensure(cross.is_zero(), || format!("charts disagree at ({u}, {v}) for {vf}"))?;
    }
    Ok(())
}

/// Dividing `u^k · F` by `u^k` returns `F`, and at every point with
/// `u ≠ 0` the two fields are parallel, with the same orientation when
/// `u^k > 0`.
pub fn check_time_rescale(
    f: &VectorField,
    k: u32,
    points: &[(Rational, Rational)],
) -> Result<(), TestCaseError> {
    let uk = Poly2::x().pow(k);
    let g = VectorField::new(&uk * &f.p, &uk * &f.q).unwrap();
    let r = time_rescale(&g, Var::X, k).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure(r == *f, || "rescaling does not undo the factor".into())?;
    for (u, v) in points {
        let (gp, gq) = g.eval(u, v);
        let (rp, rq) = r.eval(u, v);
        let cross = &gp * &rq - &gq * &rp;
        let dot = &gp * &rp + &gq * &rq;
        let factor = num_traits::pow(u.clone(), k as usize);
        ensure(cross.is_zero(), || format!("not parallel at ({u}, {v})"))?;
        ensure(!(dot.is_negative() && factor.is_positive()), || format!("orientation flips at ({u}, {v})"))?;
        ensure(!(dot.is_positive() && factor.is_negative()), || format!("orientation not reversed at ({u}, {v})"))?;
    }
    Ok(())
}

pub fn check_global_implies_center(p: &FamilyParams) -> Result<(), TestCaseError> {
    let g = global_cases(p);
    ensure(!g.is_global() || center_cases(p).is_center(), || format!("{p} is global but not a center"))
}

fn grid_value() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![rat(-2), rat(-1), ratio(-1, 2), rat(0), ratio(1, 2), rat(1), rat(2)])
}

fn negative() -> impl Strategy<Value = Rational> {
    (1i64..=8, 1i64..=4).prop_map(|(n, d)| ratio(-n, d))
}

/// Parameter vectors drawn from each global-center family, perturbed
/// occasionally, mixed with plain grid vectors.
pub fn family_params() -> impl Strategy<Value = FamilyParams> {
    let grid = prop::array::uniform8(grid_value()).prop_map(FamilyParams::from_array);
    let a = negative().prop_map(|c1| {
        let b1 = -&c1 / rat(4);
        FamilyParams::with(&[("c1", c1), ("d1", &b1 * rat(3)), ("b1", b1)])
    });
    let b = negative().prop_map(|b1| FamilyParams::with(&[("d1", &b1 * rat(3)), ("b1", b1)]));
    let c = (rational(), negative()).prop_map(|(a1, t)| {
        let c1 = t - &a1 * &a1;
        FamilyParams::with(&[("a1", a1), ("c1", c1)])
    });
    let e = (1i64..=8, 0i64..=8).prop_map(|(n, m)| {
        let b1 = ratio(n, 2);
        let c1 = -(&b1 * rat(2)) - ratio(m, 2);
        FamilyParams::with(&[("d1", -(&b1 + &c1)), ("b1", b1), ("c1", c1)])
    });
    let f = (rational(), nonzero_rational(), rational()).prop_map(|(a1, b1, d1)| {
        FamilyParams::with(&[("a1", a1), ("b1", b1), ("d1", d1)])
    });
    let g = negative().prop_map(|c1| FamilyParams::with(&[("d1", -c1.clone()), ("c1", c1)]));
    let typed = prop_oneof![a, b, c, e, f, g];
    let perturbed = (typed, 0usize..16, nonzero_rational()).prop_map(|(mut p, k, delta)| {
        if k < 8 {
            let name = gcenter::family::PARAM_NAMES[k];
            *p.get_mut(name).unwrap() += delta;
        }
        p
    });
    prop_oneof![1 => grid, 3 => perturbed]
}

pub fn points20() -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    prop::collection::vec((nonzero_rational(), nonzero_rational()), 20)
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<u32, String> {
    r.map(|_| CASES).map_err(|e| e.to_string())
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Runs every property with [`CASES`] cases; returns `(name, outcome)`.
pub fn run_all() -> Vec<(&'static str, Result<u32, String>)> {
    vec![
        (
            "poly ring laws",
            report(runner().run(&(poly(0, 3), poly(0, 3), poly(0, 3)), |(a, b, c)| check_ring_laws(&a, &b, &c))),
        ),
        (
            "blow-down pushforward",
            report(runner().run(&field(1, 4), |f| check_pushforward(&f))),
        ),
        (
            "v-divisibility of chart fields",
            report(runner().run(&(field(0, 3), 0u32..=2), |(f, extra)| check_v_divisibility(&f, extra))),
        ),
        (
            "U1/U2 chart compatibility",
            report(runner().run(&(field(0, 3), points20()), |(f, pts)| check_chart_compatibility(&f, &pts))),
        ),
        (
            "time-rescale direction",
            report(runner().run(&(field(0, 3), 1u32..=3, points20()), |(f, k, pts)| {
                check_time_rescale(&f, k, &pts)
            })),
        ),
        (
            "global implies center",
            report(runner().run(&family_params(), |p| check_global_implies_center(&p))),
        ),
    ]
}
