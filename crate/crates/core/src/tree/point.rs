use std::fmt;

use num_traits::Zero;

use super::ball::{ball_relation, Ball, Relation};
use crate::error::{Error, Result};
use crate::padic::{Point, PadicScalar, QExp, Residue, Valuation, Q};

/// A point of the Berkovich line: classical (type I), or a cut given by its
/// closed defining ball, rational (type II) or irrational (type III).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreePoint {
    Classical(Point),
    Rational(Ball),
    Irrational(Ball),
}

impl TreePoint {
    /// The cut `S(center, p^exponent)`; its type follows the exponent flag.
    pub fn cut(center: PadicScalar, exponent: QExp) -> Self {
        let irr = exponent.formally_irrational;
        let b = Ball::closed(center, exponent);
        if irr {
            TreePoint::Irrational(b)
        } else {
            TreePoint::Rational(b)
        }
    }

    /// The cut defined by an affine ball (its closed version).
    pub fn from_ball(b: &Ball) -> Result<Self> {
        if !b.is_affine() {
            return Err(Error::NotACut);
        }
        Ok(Self::cut(b.center.clone(), b.exponent.clone()))
    }

    /// The Gauss point `S_can`.
    pub fn gauss(p: u32) -> Self {
        Self::cut(PadicScalar::zero(p), QExp::zero())
    }

    pub fn classical(z: PadicScalar) -> Self {
        TreePoint::Classical(Point::Finite(z))
    }

    pub fn ball(&self) -> Option<&Ball> {
        match self {
            TreePoint::Classical(_) => None,
            TreePoint::Rational(b) | TreePoint::Irrational(b) => Some(b),
        }
    }

    pub fn is_cut(&self) -> bool {
        self.ball().is_some()
    }

    fn prime(&self) -> Option<u32> {
        match self {
            TreePoint::Classical(Point::Infinity) => None,
            TreePoint::Classical(Point::Finite(z)) => Some(z.prime()),
            TreePoint::Rational(b) | TreePoint::Irrational(b) => Some(b.prime()),
        }
    }

    /// Center and exponent, with `None` standing for a classical point.
    fn support(&self) -> Option<(&PadicScalar, Option<&QExp>)> {
        match self {
            TreePoint::Classical(Point::Infinity) => None,
            TreePoint::Classical(Point::Finite(z)) => Some((z, None)),
            TreePoint::Rational(b) | TreePoint::Irrational(b) => Some((&b.center, Some(&b.exponent))),
        }
    }
}

impl fmt::Display for TreePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreePoint::Classical(z) => write!(f, "{z}"),
            TreePoint::Rational(b) | TreePoint::Irrational(b) => {
                write!(f, "S({}; {}^{})", b.center, b.prime(), b.exponent)
            }
        }
    }
}

fn max_opt(a: Option<QExp>, b: Option<QExp>) -> Option<QExp> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(&b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn neg_valuation(v: &Valuation) -> Option<QExp> {
    v.finite().map(|v| QExp::new(-v))
}

/// Smallest closed ball containing both supports. A join with infinity is
/// taken as the join with `S_can`, the point from which infinity is observed.
pub fn join(x: &TreePoint, y: &TreePoint) -> Result<TreePoint> {
    if x == y {
        return Err(Error::DegenerateJoin);
    }
    let (sx, sy) = match (x.support(), y.support()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            let o = if x.support().is_some() { x } else { y };
            let g = TreePoint::gauss(o.prime().unwrap());
            return if o == &g { Ok(g) } else { join(o, &g) };
        }
    };
    let (a, ea) = sx;
    let (b, eb) = sy;
    let d = neg_valuation(&(a - b).valuation());
    let e = max_opt(max_opt(ea.cloned(), eb.cloned()), d).expect("distinct points have a join");
    Ok(TreePoint::cut(a.clone(), e))
}

/// Median of three points: the lowest of the pairwise joins.
pub fn median(x: &TreePoint, y: &TreePoint, z: &TreePoint) -> Result<TreePoint> {
    let j = |a: &TreePoint, b: &TreePoint| if a == b { Ok(a.clone()) } else { join(a, b) };
    let cands = [j(x, y)?, j(y, z)?, j(x, z)?];
    let mut best = cands[0].clone();
    for c in &cands[1..] {
        if let (Some(bb), Some(cb)) = (best.ball(), c.ball()) {
            if ball_relation(cb, bb) == Relation::FirstInsideSecond {
                best = c.clone();
            }
        } else if c.ball().is_none() {
            best = c.clone();
        }
    }
    Ok(best)
}

/// `2 max(t, t', log_p|z - z'|) - t - t'` for cuts `S(z, p^t)`, `S(z', p^t')`.
pub fn tree_dist(s1: &TreePoint, s2: &TreePoint) -> Result<QExp> {
    let (b1, b2) = match (s1.ball(), s2.ball()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::NotACut),
    };
    let d = neg_valuation(&(&b1.center - &b2.center).valuation());
    let m = max_opt(Some(b1.exponent.max(&b2.exponent)), d).unwrap();
    Ok(m.scale(&Q::from_integer(2.into())).sub(&b1.exponent).sub(&b2.exponent))
}

fn min0(v: &Valuation) -> Q {
    match v {
        Valuation::Finite(q) if q < &Q::zero() => q.clone(),
        _ => Q::zero(),
    }
}

/// Valuation of the chordal distance `|z - w| / (max(1,|z|) max(1,|w|))`,
/// so the distance itself is `p^(-v)`; `+inf` when `z = w`.
pub fn chordal_dist(z: &Point, w: &Point) -> Valuation {
    match (z, w) {
        (Point::Infinity, Point::Infinity) => Valuation::Infinity,
        (Point::Finite(a), Point::Infinity) | (Point::Infinity, Point::Finite(a)) => {
            Valuation::Finite(-min0(&a.valuation()))
        }
        (Point::Finite(a), Point::Finite(b)) => {
            let s = min0(&a.valuation()) + min0(&b.valuation());
            (a - b).valuation().add_q(&-s)
        }
    }
}

/// Branch at the cut `S = S(a, p^e)` containing `x`, labelled after the
/// change of variable `(z - a) p^e` that moves `S` to `S_can`.
pub fn branch_direction(s: &TreePoint, x: &TreePoint) -> Result<Residue> {
    let b = s.ball().ok_or(Error::NotACut)?;
    if s == x {
        return Err(Error::DegenerateDirection);
    }
    let scale = PadicScalar::p_pow(b.prime(), &b.exponent.q);
    let class = |z: &PadicScalar| match (&(z - &b.center) * &scale).residue() {
        Some(r) => Residue::Finite(r),
        None => Residue::Infinity,
    };
    Ok(match x {
        TreePoint::Classical(Point::Infinity) => Residue::Infinity,
        TreePoint::Classical(Point::Finite(z)) => class(z),
        TreePoint::Rational(c) | TreePoint::Irrational(c) => {
            if ball_relation(c, b) == Relation::FirstInsideSecond {
                class(&c.center)
            } else {
                Residue::Infinity
            }
        }
    })
}
