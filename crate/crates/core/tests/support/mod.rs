//! Randomized invariant checks shared by the property tests and the
//! acceptance harness. Each check runs [`CASES`] deterministic cases.

#![allow(dead_code)]

use padyn::map::{
    discriminant_delta, ff_eval, image_ball, preimage_cells, reduce_map, sup_on_ball, RationalMapSpec,
};
use padyn::padic::{q_frac, q_int, reduce_point, FiniteField, Point};
use padyn::poly::{QPoly, ScalarPoly};
use padyn::tree::{ball_relation, median, tree_dist, Ball, Relation, TreePoint};
use padyn::{PadicScalar, QExp, Valuation, Q};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 1000;
/// Points sampled per ball in the containment check.
pub const SAMPLES: usize = 1000;

pub type Check = fn() -> Result<(), String>;

pub const CHECKS: [(&str, Check); 8] = [
    ("ultrametric inequality", ultrametric),
    ("Gauss norm multiplicativity", gauss_norm),
    ("ball nesting trichotomy", nesting),
    ("image ball containment", image_containment),
    ("preimage degree sums", degree_sums),
    ("tree metric and median", tree_metric),
    ("reduction commutes with evaluation", reduction_commutes),
    ("isometry criterion", isometry),
];

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, max_global_rejects: 1 << 16, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&s, test).map_err(|e| e.to_string())
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

/// A rational `u p^k` with `u` a ratio of small integers.
#[derive(Clone, Debug)]
pub struct RawQ(i64, i64, i64);

fn raw_q() -> impl Strategy<Value = RawQ> {
    (-60i64..60, 1i64..30, -3i64..4).prop_map(|(n, d, k)| RawQ(n, d, k))
}

fn rq(p: u32, r: &RawQ) -> Q {
    let pk = Q::from_integer(p.into()).pow(r.2 as i32);
    q_frac(r.0, r.1) * pk
}

/// A tower monomial `a p^(k/e)`.
#[derive(Clone, Debug)]
pub struct RawTerm(i64, i64, i64);

fn raw_term() -> impl Strategy<Value = RawTerm> {
    (-20i64..20, -8i64..8, prop::sample::select(vec![1i64, 2, 3, 6])).prop_map(|(a, k, e)| RawTerm(a, k, e))
}

fn scalar(p: u32, terms: &[RawTerm]) -> PadicScalar {
    terms.iter().fold(PadicScalar::zero(p), |acc, t| {
        &acc + &PadicScalar::monomial(p, q_int(t.0), &q_frac(t.1, t.2))
    })
}

fn exponent() -> impl Strategy<Value = Q> {
    (-6i64..6, prop::sample::select(vec![1i64, 2, 3])).prop_map(|(k, e)| q_frac(k, e))
}

#[derive(Clone, Debug)]
pub struct RawBall {
    center: Vec<RawTerm>,
    exponent: Q,
    open: bool,
}

fn raw_ball() -> impl Strategy<Value = RawBall> {
    (prop::collection::vec(raw_term(), 0..3), exponent(), any::<bool>())
        .prop_map(|(center, exponent, open)| RawBall { center, exponent, open })
}

fn ball(p: u32, b: &RawBall) -> Ball {
    let c = scalar(p, &b.center);
    let e = QExp::new(b.exponent.clone());
    if b.open {
        Ball::open(c, e)
    } else {
        Ball::closed(c, e)
    }
}

fn raw_poly() -> impl Strategy<Value = Vec<RawQ>> {
    prop::collection::vec(raw_q(), 2..6).prop_filter("nonconstant", |c| c.last().unwrap().0 != 0)
}

fn qpoly(p: u32, c: &[RawQ]) -> QPoly {
    QPoly::new(c.iter().map(|r| rq(p, r)).collect())
}

/// Offsets `u p^s` landing inside the ball `B(c, p^e)`: `s = -e + delta`,
/// with `delta > 0` on open balls.
#[derive(Clone, Debug)]
pub struct RawOffset(i64, i64, i64);

fn raw_offset() -> impl Strategy<Value = RawOffset> {
    (1i64..40, 0i64..4, prop::sample::select(vec![1i64, 2, 3, 6])).prop_map(|(u, n, d)| RawOffset(u, n, d))
}

fn inside(b: &Ball, o: &RawOffset) -> PadicScalar {
    let p = b.prime();
    let mut delta = q_frac(o.1, o.2);
    if b.closure == padyn::tree::Closure::Open && delta == q_int(0) {
        delta = q_frac(1, o.2);
    }
    let s = -&b.exponent.q + delta;
    &b.center + &PadicScalar::monomial(p, q_int(o.0), &s)
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

pub fn ultrametric() -> Result<(), String> {
    let s = (prime(), prop::collection::vec(raw_term(), 0..4), prop::collection::vec(raw_term(), 0..4));
    run(s, |(p, a, b)| {
        let (x, y) = (scalar(p, &a), scalar(p, &b));
        let (vx, vy) = (x.valuation(), y.valuation());
        let vs = (&x + &y).valuation();
        check(vs >= vx.clone().min(vy.clone()), "v(x + y) < min")?;
        if vx != vy {
            check(vs == vx.clone().min(vy.clone()), "strict triangle fails")?;
        }
        check((&x * &y).valuation() == vx.add(&vy), "v(xy) != v(x) + v(y)")?;
        check((-&x).valuation() == vx, "v(-x) != v(x)")
    })
}

pub fn gauss_norm() -> Result<(), String> {
    let s = (prime(), raw_poly(), raw_poly(), prop::collection::vec(raw_term(), 0..3), exponent());
    run(s, |(p, f, g, c, e)| {
        let (f, g) = (qpoly(p, &f), qpoly(p, &g));
        let (sf, sg) = (ScalarPoly::from_qpoly(p, &f), ScalarPoly::from_qpoly(p, &g));
        let sfg = ScalarPoly::from_qpoly(p, &f.mul(&g));
        let (c, e) = (scalar(p, &c), QExp::new(e));
        let lhs = sup_on_ball(&sfg, &c, Some(&e)).expect("nonzero product");
        let rhs = sup_on_ball(&sf, &c, Some(&e)).unwrap().add(&sup_on_ball(&sg, &c, Some(&e)).unwrap());
        check(lhs == rhs, format!("sup(PQ) = {lhs} but sup P + sup Q = {rhs}"))
    })
}

/// Points of `b` at the radius of a ball strictly between `inner` and `b`,
/// pairwise at that distance, so at most one of them lies in `inner`.
fn spread(b: &Ball, inner: &Ball) -> Vec<PadicScalar> {
    let p = b.prime();
    let rho = if inner.exponent.q < b.exponent.q {
        (&inner.exponent.q + &b.exponent.q) / q_int(2)
    } else {
        b.exponent.q.clone()
    };
    (0..p as i64).map(|u| &b.center + &PadicScalar::monomial(p, q_int(u), &-rho.clone())).collect()
}

pub fn nesting() -> Result<(), String> {
    let s = (prime(), raw_ball(), raw_ball(), prop::collection::vec(raw_offset(), 8));
    run(s, |(p, ra, rb, offs)| {
        let (a, b) = (ball(p, &ra), ball(p, &rb));
        let rel = ball_relation(&a, &b);
        let back = ball_relation(&b, &a);
        let mirrored = match rel {
            Relation::FirstInsideSecond => Relation::SecondInsideFirst,
            Relation::SecondInsideFirst => Relation::FirstInsideSecond,
            r => r,
        };
        check(back == mirrored, "relation is not antisymmetric")?;
        let sa: Vec<_> = offs.iter().map(|o| inside(&a, o)).collect();
        let sb: Vec<_> = offs.iter().map(|o| inside(&b, o)).collect();
        let a_in_b = sa.iter().all(|x| b.affine_contains(x));
        let b_in_a = sb.iter().all(|x| a.affine_contains(x));
        let a_meets_b = sa.iter().any(|x| b.affine_contains(x));
        let b_meets_a = sb.iter().any(|x| a.affine_contains(x));
        match rel {
            Relation::Disjoint => check(!a_meets_b && !b_meets_a, "disjoint balls share a point"),
            Relation::Equal => {
                check(a_in_b && b_in_a, "equal balls differ on samples")?;
                check(a.canonical_key() == b.canonical_key(), "equal balls with different keys")
            }
            Relation::FirstInsideSecond => {
                check(a_in_b, "inner ball escapes")?;
                check(spread(&b, &a).iter().any(|x| !a.affine_contains(x)), "containment is not strict")
            }
            Relation::SecondInsideFirst => {
                check(b_in_a, "inner ball escapes")?;
                check(spread(&a, &b).iter().any(|x| !b.affine_contains(x)), "containment is not strict")
            }
            Relation::CoverP1 => check(false, "affine balls cannot cover P1"),
        }
    })
}

pub fn image_containment() -> Result<(), String> {
    let s = (prime(), raw_poly(), raw_ball());
    run(s, |(p, f, rb)| {
        let f = ScalarPoly::from_qpoly(p, &qpoly(p, &f));
        let b = ball(p, &rb);
        let img = image_ball(&f, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..SAMPLES {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let o = RawOffset(1 + (seed >> 33) as i64 % 40, (seed >> 20) as i64 % 4, [1, 2, 3, 6][(seed >> 8) as usize % 4]);
            let x = inside(&b, &o);
            check(img.image.affine_contains(&f.eval(&x)), format!("P({x}) leaves {}", img.image))?;
        }
        Ok(())
    })
}

pub fn degree_sums() -> Result<(), String> {
    let s = (prop::sample::select(vec![2u32, 3, 5]), raw_poly(), raw_q(), -3i64..3, any::<bool>());
    run(s, |(p, f, c, e, open)| {
        let f = ScalarPoly::from_qpoly(p, &qpoly(p, &f));
        let center = PadicScalar::from_q(p, rq(p, &c));
        let target = if open { Ball::open(center, QExp::int(e)) } else { Ball::closed(center, QExp::int(e)) };
        let r = preimage_cells(&f, &target);
        let found: usize = r.cells.iter().map(|c| c.degree).sum();
        let d = f.degree().unwrap();
        if r.certificate.is_complete() {
            check(found == d, format!("complete search found degree {found} of {d}"))?;
        } else {
            check(found < d, "incomplete search with full degree")?;
        }
        for (i, cell) in r.cells.iter().enumerate() {
            let img = image_ball(&f, &cell.ball).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(img.image == target, format!("cell {} maps to {}", cell.ball, img.image))?;
            check(img.local_degree == cell.degree, "cell degree mismatch")?;
            for other in &r.cells[i + 1..] {
                check(ball_relation(&cell.ball, &other.ball) == Relation::Disjoint, "cells overlap")?;
            }
        }
        Ok(())
    })
}

fn cut(p: u32, c: &[RawTerm], e: &Q) -> TreePoint {
    TreePoint::cut(scalar(p, c), QExp::new(e.clone()))
}

pub fn tree_metric() -> Result<(), String> {
    let raw = || (prop::collection::vec(raw_term(), 0..3), exponent());
    let s = (prime(), raw(), raw(), raw());
    run(s, |(p, a, b, c)| {
        let (x, y, z) = (cut(p, &a.0, &a.1), cut(p, &b.0, &b.1), cut(p, &c.0, &c.1));
        let d = |s: &TreePoint, t: &TreePoint| tree_dist(s, t).unwrap().q;
        let zero = q_int(0);
        check(d(&x, &x) == zero, "d(x, x) != 0")?;
        check(d(&x, &y) == d(&y, &x), "asymmetric")?;
        check((d(&x, &y) == zero) == (x == y), "d = 0 off the diagonal")?;
        check(d(&x, &y) >= zero, "negative distance")?;
        check(d(&x, &z) <= d(&x, &y) + d(&y, &z), "triangle inequality fails")?;
        let m = median(&x, &y, &z).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for (s, t) in [(&x, &y), (&y, &z), (&x, &z)] {
            check(d(s, t) == d(s, &m) + d(&m, t), format!("median {m} is off the geodesic"))?;
        }
        Ok(())
    })
}

#[derive(Clone, Debug)]
pub struct RawMap {
    num: Vec<i64>,
    den: Vec<i64>,
}

fn good_map() -> impl Strategy<Value = (u32, RawMap, Option<RawQ>)> {
    let coeffs = |n| prop::collection::vec(-9i64..10, n);
    (prime(), 1usize..4)
        .prop_flat_map(move |(p, d)| (Just(p), coeffs(d + 1), coeffs(d + 1), prop::option::weighted(0.9, raw_q())))
        .prop_filter_map("bad reduction", |(p, num, den, z)| {
            let r = RationalMapSpec::new(p as u64, QPoly::from_ints(&num), QPoly::from_ints(&den)).ok()?;
            (discriminant_delta(&r) == Valuation::from_int(0)).then_some((p, RawMap { num, den }, z))
        })
}

pub fn reduction_commutes() -> Result<(), String> {
    run(good_map(), |(p, m, z)| {
        let r = RationalMapSpec::new(p as u64, QPoly::from_ints(&m.num), QPoly::from_ints(&m.den)).unwrap();
        let z = match z {
            Some(q) => Point::rational(p, rq(p, &q)),
            None => Point::Infinity,
        };
        let rz = r.eval(&z).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let field = FiniteField::new(p, 1).unwrap();
        let bar = ff_eval(&field, &reduce_map(&r), reduce_point(&z)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(reduce_point(&rz) == bar, format!("reduction of R({z}) = {rz} is not {bar}"))
    })
}

fn isometric(f: &ScalarPoly, x: &PadicScalar, y: &PadicScalar) -> bool {
    (&f.eval(x) - &f.eval(y)).valuation() == (x - y).valuation()
}

/// Pairs probing a closed ball at its own scale and one and two steps below.
fn probe_pairs(b: &Ball) -> Vec<(PadicScalar, PadicScalar)> {
    let p = b.prime();
    let e = &b.exponent.q;
    let at = |u: i64, s: &Q| &b.center + &PadicScalar::monomial(p, q_int(u), s);
    let top: Vec<PadicScalar> = (0..p as i64).map(|u| at(u, &-e)).collect();
    let mut pairs = Vec::new();
    for (i, x) in top.iter().enumerate() {
        for y in &top[i + 1..] {
            pairs.push((x.clone(), y.clone()));
        }
        for k in 1..3 {
            let step = PadicScalar::p_pow(p, &(-e + q_int(k)));
            pairs.push((x.clone(), x + &step));
        }
    }
    pairs
}

pub fn isometry() -> Result<(), String> {
    let s = (prime(), raw_poly(), prop::collection::vec(raw_term(), 0..3), exponent(), prop::collection::vec(raw_offset(), 12));
    run(s, |(p, f, c, e, offs)| {
        let f = ScalarPoly::from_qpoly(p, &qpoly(p, &f));
        let b = Ball::closed(scalar(p, &c), QExp::new(e));
        let img = image_ball(&f, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let same_scale = img.image.exponent == b.exponent;
        let pts: Vec<PadicScalar> = offs.iter().map(|o| inside(&b, o)).collect();
        let mut pairs = probe_pairs(&b);
        for (i, x) in pts.iter().enumerate() {
            for y in &pts[i + 1..] {
                if x != y {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
        let iso = pairs.iter().filter(|(x, y)| isometric(&f, x, y)).count();
        match (img.local_degree, same_scale) {
            (1, true) => check(iso == pairs.len(), "degree one at equal scale is not isometric"),
            (1, false) => check(iso == 0, "a rescaling ball preserves a distance"),
            _ => check(iso < pairs.len(), "higher degree map is isometric on every probe"),
        }
    })
}
