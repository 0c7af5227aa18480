use std::cmp::Ordering;
use std::fmt;

use crate::padic::{Point, PadicScalar, QExp, Valuation, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Closure {
    Open,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BallKind {
    Affine,
    /// Contains infinity; the remaining fields describe the removed affine ball.
    Complement,
}

/// A disk `{ v(z - center) >= -exponent }` (closed) or `> -exponent` (open),
/// or the complement of one in `P^1`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub kind: BallKind,
    pub center: PadicScalar,
    pub exponent: QExp,
    pub closure: Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Disjoint,
    Equal,
    FirstInsideSecond,
    SecondInsideFirst,
    CoverP1,
}

impl Ball {
    pub fn new(kind: BallKind, center: PadicScalar, exponent: QExp, closure: Closure) -> Self {
        // With an irrational radius the sphere is empty, so open = closed.
        let closure = if exponent.formally_irrational { Closure::Closed } else { closure };
        Ball { kind, center, exponent, closure }
    }

    pub fn closed(center: PadicScalar, exponent: QExp) -> Self {
        Self::new(BallKind::Affine, center, exponent, Closure::Closed)
    }

    pub fn open(center: PadicScalar, exponent: QExp) -> Self {
        Self::new(BallKind::Affine, center, exponent, Closure::Open)
    }

    /// The closed unit ball `B(0, 1)`.
    pub fn unit(p: u32) -> Self {
        Self::closed(PadicScalar::zero(p), QExp::zero())
    }

    pub fn complement(&self) -> Self {
        let kind = match self.kind {
            BallKind::Affine => BallKind::Complement,
            BallKind::Complement => BallKind::Affine,
        };
        Ball { kind, ..self.clone() }
    }

    pub fn prime(&self) -> u32 {
        self.center.prime()
    }

    pub fn is_affine(&self) -> bool {
        self.kind == BallKind::Affine
    }

    /// The affine ball described by the fields, ignoring `kind`.
    pub fn hole(&self) -> Ball {
        Ball { kind: BallKind::Affine, ..self.clone() }
    }

    /// Membership of a finite point in the described affine ball.
    pub fn affine_contains(&self, z: &PadicScalar) -> bool {
        let v = (z - &self.center).valuation();
        self.radius_admits(&v)
    }

    /// Whether a difference of valuation `v` stays within the radius.
    pub fn radius_admits(&self, v: &Valuation) -> bool {
        match self.closure {
            Closure::Closed => v.within(&self.exponent.q),
            Closure::Open => v.strictly_within(&self.exponent.q),
        }
    }

    pub fn contains(&self, z: &Point) -> bool {
        match (self.kind, z) {
            (BallKind::Affine, Point::Infinity) => false,
            (BallKind::Complement, Point::Infinity) => true,
            (BallKind::Affine, Point::Finite(x)) => self.affine_contains(x),
            (BallKind::Complement, Point::Finite(x)) => !self.affine_contains(x),
        }
    }

    fn radius_cmp(&self, o: &Ball) -> Ordering {
        self.exponent.q.cmp(&o.exponent.q).then(self.closure.cmp(&o.closure))
    }

    /// Same ball around another of its members.
    pub fn recenter(&self, c: PadicScalar) -> Ball {
        debug_assert!(self.affine_contains(&c));
        Ball { center: c, ..self.clone() }
    }

    /// Digits of the canonical center: the expansion of any member truncated
    /// at the radius. Equal balls have equal keys.
    pub fn canonical_key(&self) -> Vec<(Q, u32)> {
        let bound = -&self.exponent.q;
        self.center.digits(&bound, self.closure == Closure::Open)
    }

    pub fn canonical(&self) -> Ball {
        let c = PadicScalar::from_digits(self.prime(), &self.canonical_key());
        Ball { center: c, ..self.clone() }
    }
}

fn affine_subset(a: &Ball, b: &Ball) -> bool {
    a.radius_cmp(b) != Ordering::Greater && b.affine_contains(&a.center)
}

fn affine_relation(a: &Ball, b: &Ball) -> Relation {
    let ab = affine_subset(a, b);
    let ba = affine_subset(b, a);
    match (ab, ba) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::FirstInsideSecond,
        (false, true) => Relation::SecondInsideFirst,
        (false, false) => Relation::Disjoint,
    }
}

fn flip(r: Relation) -> Relation {
    match r {
        Relation::FirstInsideSecond => Relation::SecondInsideFirst,
        Relation::SecondInsideFirst => Relation::FirstInsideSecond,
        r => r,
    }
}

fn affine_vs_complement(a: &Ball, c: &Ball) -> Relation {
    match affine_relation(a, &c.hole()) {
        Relation::Disjoint => Relation::FirstInsideSecond,
        Relation::Equal | Relation::FirstInsideSecond => Relation::Disjoint,
        Relation::SecondInsideFirst => Relation::CoverP1,
        Relation::CoverP1 => unreachable!(),
    }
}

/// Set-theoretic relation between two balls of `P^1(C_p)`.
pub fn ball_relation(b1: &Ball, b2: &Ball) -> Relation {
    match (b1.kind, b2.kind) {
        (BallKind::Affine, BallKind::Affine) => affine_relation(b1, b2),
        (BallKind::Affine, BallKind::Complement) => affine_vs_complement(b1, b2),
        (BallKind::Complement, BallKind::Affine) => flip(affine_vs_complement(b2, b1)),
        (BallKind::Complement, BallKind::Complement) => match affine_relation(&b1.hole(), &b2.hole()) {
            Relation::Disjoint => Relation::CoverP1,
            r => flip(r),
        },
    }
}

impl PartialEq for Ball {
    fn eq(&self, o: &Ball) -> bool {
        self.kind == o.kind
            && self.exponent.formally_irrational == o.exponent.formally_irrational
            && ball_relation(self, o) == Relation::Equal
    }
}

impl Eq for Ball {}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = match self.closure {
            Closure::Closed => ("[", "]"),
            Closure::Open => ("(", ")"),
        };
        if self.kind == BallKind::Complement {
            write!(f, "P1 \\ ")?;
        }
        write!(f, "B{l}{}; {}^{}{r}", self.center, self.prime(), self.exponent)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, q_int};

    fn pt(n: i64) -> PadicScalar {
        PadicScalar::from_int(3, n)
    }

    #[test]
    fn relation_examples() {
        let a = Ball::closed(pt(0), QExp::int(-1));
        let b = Ball::closed(pt(0), QExp::int(0));
        assert_eq!(ball_relation(&a, &b), Relation::FirstInsideSecond);
        let c = Ball::closed(pt(1), QExp::int(-1));
        let d = Ball::closed(pt(2), QExp::int(-1));
        assert_eq!(ball_relation(&c, &d), Relation::Disjoint);
        let o = Ball::open(pt(0), QExp::int(0));
        assert_eq!(ball_relation(&o, &b), Relation::FirstInsideSecond);
        assert_eq!(ball_relation(&b, &o), Relation::SecondInsideFirst);
    }

    #[test]
    fn complements() {
        let unit = Ball::unit(3);
        let small = Ball::closed(pt(0), QExp::int(-1));
        let far = Ball::closed(pt(1), QExp::int(-1));
        assert_eq!(ball_relation(&small, &unit.complement()), Relation::Disjoint);
        assert_eq!(ball_relation(&far, &small.complement()), Relation::FirstInsideSecond);
        assert_eq!(ball_relation(&unit, &small.complement()), Relation::CoverP1);
        assert_eq!(ball_relation(&unit.complement(), &small.complement()), Relation::FirstInsideSecond);
        assert_eq!(ball_relation(&far.complement(), &small.complement()), Relation::CoverP1);
        assert!(unit.complement().contains(&Point::Infinity));
    }

    #[test]
    fn any_member_is_a_center() {
        let b = Ball::closed(pt(1), QExp::int(-2));
        assert_eq!(b, b.recenter(pt(10)));
        assert_eq!(b.canonical().center, pt(1));
        assert_eq!(Ball::closed(pt(10), QExp::int(-2)).canonical().center, pt(1));
    }

    #[test]
    fn irrational_open_equals_closed() {
        let e = QExp::flagged(q_frac(1, 2));
        assert_eq!(Ball::open(pt(0), e.clone()), Ball::closed(pt(0), e));
        assert_ne!(Ball::open(pt(0), QExp::new(q_int(0))), Ball::unit(3));
    }
}
