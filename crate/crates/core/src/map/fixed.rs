use num_traits::{One, Zero};

use super::spec::RationalMapSpec;
use crate::error::{Error, Result};
use crate::padic::{q_int, valuation_q, PadicScalar, Point, Valuation, Q};
use crate::poly::{newton_polygon, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedClass {
    SuperAttracting,
    Attracting,
    Indifferent,
    Repelling,
}

impl std::fmt::Display for FixedClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FixedClass::SuperAttracting => "SUPER_ATTRACTING",
            FixedClass::Attracting => "ATTRACTING",
            FixedClass::Indifferent => "INDIFFERENT",
            FixedClass::Repelling => "REPELLING",
        })
    }
}

/// Class of a multiplier from its valuation.
pub fn classify(v: &Valuation) -> FixedClass {
    match v {
        Valuation::Infinity => FixedClass::SuperAttracting,
        Valuation::Finite(q) if q > &Q::zero() => FixedClass::Attracting,
        Valuation::Finite(q) if q.is_zero() => FixedClass::Indifferent,
        Valuation::Finite(_) => FixedClass::Repelling,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointRecord {
    pub location: Point,
    pub multiplicity: usize,
    pub multiplier: PadicScalar,
    pub multiplier_valuation: Valuation,
    pub class: FixedClass,
}

/// Fixed points outside `Q`, known only through the Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrationalFixed {
    pub valuation: Valuation,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    pub records: Vec<FixedPointRecord>,
    pub unresolved: Vec<IrrationalFixed>,
    /// False if the rational root search may have missed candidates.
    pub search_complete: bool,
}

fn record(p: u32, location: Point, multiplicity: usize, lambda: Q) -> FixedPointRecord {
    let v = valuation_q(&lambda, p);
    FixedPointRecord {
        location,
        multiplicity,
        multiplier: PadicScalar::from_q(p, lambda),
        class: classify(&v),
        multiplier_valuation: v,
    }
}

/// Fixed-point polynomial `zQ - P`.
pub fn fixed_polynomial(r: &RationalMapSpec) -> QPoly {
    QPoly::x().mul(r.den()).sub(r.num())
}

/// Rational fixed points (and infinity) with exact multipliers; the rest are
/// summarized as `(valuation, count)` from the Newton polygon.
pub fn fixed_points(r: &RationalMapSpec) -> Result<FixedPoints> {
    let p = r.prime();
    let f = fixed_polynomial(r);
    if f.is_zero() {
        return Err(Error::InvalidMap("identity map fixes every point".into()));
    }
    let mut records = Vec::new();
    let (dn, dd) = (r.num().degree().unwrap(), r.den().degree().unwrap());
    if dn > dd {
        let lambda = if dn == dd + 1 { r.den().lead() / r.num().lead() } else { Q::zero() };
        records.push(record(p, Point::Infinity, 1, lambda));
    }
    let (roots, complete) = f.rational_roots();
    let mut rest = f.clone();
    for (z, m) in &roots {
        let lambda = r.derivative_at(z).expect("fixed points are not poles");
        records.push(record(p, Point::rational(p, z.clone()), *m, lambda));
        let lin = QPoly::new(vec![-z.clone(), Q::one()]);
        for _ in 0..*m {
            rest = rest.divrem(&lin).0;
        }
    }
    let vals: Vec<Valuation> = rest.coeffs().iter().map(|a| valuation_q(a, p)).collect();
    let unresolved = newton_polygon(&vals)
        .root_valuations()
        .into_iter()
        .map(|(valuation, count)| IrrationalFixed { valuation, count })
        .collect();
    Ok(FixedPoints { records, unresolved, search_complete: complete })
}

/// Power sums `sum z_i^k` for `k < n` over the roots of a monic `f` of degree `n`.
fn power_sums(f: &QPoly) -> Vec<Q> {
    let n = f.degree().unwrap();
    let a = |i: usize| f.coeff(i);
    let mut ps = vec![q_int(n as i64)];
    for k in 1..n {
        let mut s = q_int(k as i64) * a(n - k);
        for i in 1..k {
            s += a(n - i) * &ps[k - i];
        }
        ps.push(-s);
    }
    ps
}

/// `sum_i 1/(1 - lambda_i)` over all fixed points, computed without locating
/// them: the trace of `Q^2 / (Q^2 - (P'Q - PQ'))` in `Q[z]/(zQ - P)`.
pub fn lefschetz_sum(r: &RationalMapSpec) -> Result<Q> {
    let (num, den) = (r.num(), r.den());
    if num.degree().unwrap() > den.degree().unwrap() {
        return Err(Error::UnsupportedNormalization("infinity is a fixed point".into()));
    }
    let f = fixed_polynomial(r).monic();
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(Error::ResonantMultiplier);
    }
    let n = den.mul(den);
    let wronskian = num.derivative().mul(den).sub(&num.mul(&den.derivative()));
    let m = n.sub(&wronskian).divrem(&f).1;
    let (g, s, _) = m.ext_gcd(&f);
    if g.degree() != Some(0) {
        return Err(Error::ResonantMultiplier);
    }
    let h = n.mul(&s.scale(&g.coeff(0).recip())).divrem(&f).1;
    let ps = power_sums(&f);
    Ok(h.coeffs().iter().zip(&ps).map(|(a, b)| a * b).sum())
}
