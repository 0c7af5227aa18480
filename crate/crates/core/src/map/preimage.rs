use std::fmt;

use super::image::max_preimage_ball;
use crate::padic::{FiniteField, PadicScalar, Q};
use crate::poly::{fp, newton_polygon, ScalarPoly};
use crate::tree::{Ball, Closure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Complete,
    /// Local degrees found versus the degree they should sum to.
    Incomplete { found: usize, expected: usize },
}

impl Certificate {
    pub fn is_complete(&self) -> bool {
        matches!(self, Certificate::Complete)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Complete => write!(f, "COMPLETE"),
            Certificate::Incomplete { .. } => write!(f, "INCOMPLETE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageCell {
    pub ball: Ball,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageResult {
    /// Sorted by the canonical digits of their centers.
    pub cells: Vec<PreimageCell>,
    pub certificate: Certificate,
}

pub const DEFAULT_SEARCH_STEPS: usize = 20_000;

/// Consecutive refinements of an unsplit cluster tolerated on one branch.
pub const MAX_STALL: usize = 10;

pub fn preimage_cells(f: &ScalarPoly, target: &Ball) -> PreimageResult {
    preimage_cells_with(f, target, DEFAULT_SEARCH_STEPS)
}

/// Components of `P^{-1}(target)`, each with its local degree.
///
/// Centers are located by Newton-Puiseux refinement of the roots of
/// `P - c`: from an approximation `x`, the Newton polygon of `P(x + t) - c`
/// lists the valuations `s` of `r - x` over the roots `r`, and the `F_p`-roots
/// `u` of each residual polynomial give the refinements `x + u p^s`. A branch
/// stops refining once it lands in the preimage, except towards roots outside
/// the cell just found. Completeness is certified afterwards by the degree
/// sum; branches whose residual roots leave `F_p` are simply lost, and show up
/// as an incomplete certificate. So are branches that refine a cluster without
/// splitting it more than [`MAX_STALL`] times in a row: when the cluster is
/// separated only by an unramified extension, the refinement exponents
/// accumulate below the cell radius and the chase never ends.
pub fn preimage_cells_with(f: &ScalarPoly, target: &Ball, max_steps: usize) -> PreimageResult {
    let p = f.prime();
    let expected = f.degree().unwrap_or(0);
    let field = FiniteField::new(p, 1).expect("prime field");
    let g = f.sub_const(&target.center);
    let mut cells: Vec<PreimageCell> = Vec::new();
    let mut stack: Vec<(PadicScalar, Option<Q>, usize)> = vec![(PadicScalar::zero(p), None, 0)];
    let mut steps = 0;
    let mut exhausted = false;
    while let Some((x, floor, stall)) = stack.pop() {
        steps += 1;
        if steps > max_steps {
            exhausted = true;
            break;
        }
        let h = g.taylor_shift(&x);
        let vals = h.valuations();
        let mut ceiling: Option<(Q, bool)> = None;
        if vals.is_empty() || target.radius_admits(&vals[0]) {
            let cell = match cells.iter().find(|c| c.ball.affine_contains(&x)) {
                Some(c) => c.ball.clone(),
                None => match max_preimage_ball(f, &x, target) {
                    Ok((ball, degree)) => {
                        let ball = ball.canonical();
                        cells.push(PreimageCell { ball: ball.clone(), degree });
                        ball
                    }
                    Err(_) => continue,
                },
            };
            // Roots at valuation beyond -e from x lie inside this cell.
            ceiling = Some((-&cell.exponent.q, cell.closure == Closure::Open));
        }
        let np = newton_polygon(&vals);
        for seg in np.segments.iter().rev() {
            let s = &seg.root_valuation;
            if floor.as_ref().is_some_and(|fl| s <= fl) {
                continue;
            }
            if let Some((c, open)) = &ceiling {
                if s > c || (s == c && !open) {
                    continue;
                }
            }
            let m = vals[seg.start].finite().unwrap() + Q::from_integer((seg.start as i64).into()) * s;
            let residual: Vec<u32> = (seg.start..=seg.end)
                .map(|k| {
                    let shift = Q::from_integer((k as i64).into()) * s - &m;
                    let scaled = &h.coeff(k) * &PadicScalar::p_pow(p, &shift);
                    scaled.residue().expect("lower hull coefficients are integral")
                })
                .collect();
            let ps = PadicScalar::p_pow(p, s);
            let roots = fp::roots(&field, &residual);
            let unsplit = seg.len() >= 2 && roots.len() == 1 && roots[0].1 == seg.len();
            let stall = if unsplit && ceiling.is_none() { stall + 1 } else { 0 };
            if stall > MAX_STALL {
                continue;
            }
            for (u, _) in roots.into_iter().rev() {
                if u == 0 {
                    continue;
                }
                let step = ps.mul_q(&Q::from_integer((u as i64).into()));
                stack.push((&x + &step, Some(s.clone()), stall));
            }
        }
    }
    cells.sort_by_key(|c| c.ball.canonical_key());
    let found: usize = cells.iter().map(|c| c.degree).sum();
    let certificate = if !exhausted && found == expected {
        Certificate::Complete
    } else {
        Certificate::Incomplete { found, expected }
    };
    PreimageResult { cells, certificate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, q_int, QExp};
    use crate::poly::QPoly;

    fn sp(c: Vec<Q>) -> ScalarPoly {
        ScalarPoly::from_qpoly(3, &QPoly::new(c))
    }

    fn s(n: i64) -> PadicScalar {
        PadicScalar::from_int(3, n)
    }

    #[test]
    fn expanding_cubic() {
        let f = sp(vec![q_int(0), q_frac(1, 3), q_int(0), q_frac(-1, 3)]);
        let r = preimage_cells(&f, &Ball::unit(3));
        assert_eq!(r.certificate, Certificate::Complete);
        let balls: Vec<Ball> = r.cells.iter().map(|c| c.ball.clone()).collect();
        assert_eq!(
            balls,
            (0..3).map(|i| Ball::closed(s(i), QExp::int(-1))).collect::<Vec<_>>()
        );
        assert!(r.cells.iter().all(|c| c.degree == 1));
    }

    #[test]
    fn nonic_level_one() {
        let mut c = vec![q_int(0); 10];
        c[3] = q_frac(1, 3);
        c[9] = q_frac(-1, 3);
        let r = preimage_cells(&sp(c), &Ball::unit(3));
        assert_eq!(r.certificate, Certificate::Complete);
        assert_eq!(r.cells.len(), 3);
        for (i, cell) in r.cells.iter().enumerate() {
            assert_eq!(cell.ball, Ball::closed(s(i as i64), QExp::new(q_frac(-1, 3))));
            assert_eq!(cell.degree, 3);
        }
    }

    #[test]
    fn square_roots_of_one() {
        let f = sp(vec![q_int(0), q_int(0), q_int(1)]);
        let r = preimage_cells(&f, &Ball::closed(s(1), QExp::int(-1)));
        assert_eq!(r.certificate, Certificate::Complete);
        let balls: Vec<Ball> = r.cells.iter().map(|c| c.ball.clone()).collect();
        assert_eq!(balls, vec![Ball::closed(s(1), QExp::int(-1)), Ball::closed(s(2), QExp::int(-1))]);
    }

    #[test]
    fn missing_unramified_roots_are_reported() {
        // z^2 = -1 has no solution in the tower over Q_3
        let f = sp(vec![q_int(0), q_int(0), q_int(1)]);
        let r = preimage_cells(&f, &Ball::closed(s(-1), QExp::int(-1)));
        assert_eq!(r.certificate, Certificate::Incomplete { found: 0, expected: 2 });
    }
}
