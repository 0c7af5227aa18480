use super::ball::{ball_relation, Ball, Closure, Relation};
use super::point::TreePoint;
use crate::error::{Error, Result};
use crate::padic::Point;

/// An open ball minus finitely many pairwise disjoint closed balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affinoid {
    outer: Ball,
    removed: Vec<Ball>,
}

impl Affinoid {
    pub fn new(outer: Ball, removed: Vec<Ball>) -> Result<Self> {
        if !outer.is_affine() || outer.closure != Closure::Open {
            return Err(Error::InvalidAffinoid("outer ball must be an open affine ball".into()));
        }
        for (i, r) in removed.iter().enumerate() {
            if !r.is_affine() || r.closure != Closure::Closed {
                return Err(Error::InvalidAffinoid("removed balls must be closed affine balls".into()));
            }
            if ball_relation(r, &outer) != Relation::FirstInsideSecond {
                return Err(Error::InvalidAffinoid(format!("removed ball {r} is not strictly inside {outer}")));
            }
            for s in &removed[..i] {
                if ball_relation(r, s) != Relation::Disjoint {
                    return Err(Error::InvalidAffinoid(format!("removed balls {s} and {r} overlap")));
                }
            }
        }
        Ok(Affinoid { outer, removed })
    }

    pub fn outer(&self) -> &Ball {
        &self.outer
    }

    pub fn removed(&self) -> &[Ball] {
        &self.removed
    }

    pub fn contains(&self, z: &Point) -> bool {
        self.outer.contains(z) && !self.removed.iter().any(|r| r.contains(z))
    }

    /// Whether the cut meets the affinoid in at least two of its branches:
    /// its defining ball must sit strictly inside the outer ball without
    /// being swallowed by a removed ball.
    pub fn separated_by(&self, s: &TreePoint) -> Result<bool> {
        let d = s.ball().ok_or(Error::NotACut)?;
        if ball_relation(d, &self.outer) != Relation::FirstInsideSecond {
            return Ok(false);
        }
        Ok(!self.removed.iter().any(|r| {
            matches!(ball_relation(d, r), Relation::FirstInsideSecond | Relation::Equal)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, PadicScalar, QExp};

    fn zero() -> PadicScalar {
        PadicScalar::zero(3)
    }

    #[test]
    fn membership_and_separation() {
        let a = Affinoid::new(Ball::open(zero(), QExp::zero()), vec![Ball::closed(zero(), QExp::int(-1))]).unwrap();
        assert!(!a.contains(&Point::Finite(PadicScalar::from_q(3, q_frac(1, 3)))));
        assert!(!a.contains(&Point::Finite(PadicScalar::from_int(3, 9))));
        assert!(a.contains(&Point::Finite(PadicScalar::p_pow(3, &q_frac(1, 2)))));

        let b = Affinoid::new(Ball::open(zero(), QExp::zero()), vec![]).unwrap();
        assert!(b.separated_by(&TreePoint::cut(zero(), QExp::int(-1))).unwrap());
        assert!(!b.separated_by(&TreePoint::cut(zero(), QExp::int(1))).unwrap());
        assert!(!a.separated_by(&TreePoint::cut(zero(), QExp::int(-2))).unwrap());
    }

    #[test]
    fn malformed() {
        let outer = Ball::open(zero(), QExp::zero());
        let big = Ball::closed(zero(), QExp::int(0));
        assert!(Affinoid::new(outer.clone(), vec![big]).is_err());
        let r1 = Ball::closed(PadicScalar::from_int(3, 3), QExp::int(-2));
        let r2 = Ball::closed(PadicScalar::from_int(3, 3), QExp::int(-3));
        assert!(Affinoid::new(outer, vec![r1, r2]).is_err());
    }
}
