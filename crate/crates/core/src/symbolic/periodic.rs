use num_traits::Zero;

use super::code::{polynomial_of, Code, CodeStatus};
use crate::error::{Error, Result};
use crate::map::{image_ball, preimage_cells, PreimageCell, RationalMapSpec};
use crate::padic::{q_int, PadicScalar, Point, QExp, Q};
use crate::poly::{QPoly, ScalarPoly};
use crate::tree::{ball_relation, Ball, Relation, TreePoint};

/// Deepest level explored while waiting for the exponents to settle.
pub const MAX_CHAIN_DEPTH: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicBall {
    /// The limit cut, or a classical point when the cells shrink to one.
    pub limit: TreePoint,
    /// Degree of the period-`T` iterate along the chain.
    pub d: usize,
    /// Exponent of the limit, `None` when the cells shrink to a point.
    pub exponent: Option<QExp>,
    pub status: CodeStatus,
    /// Exponents of the cells carrying the code, from depth 1.
    pub chain: Vec<QExp>,
}

fn within(cell: &PreimageCell, outer: &Ball) -> bool {
    matches!(ball_relation(&cell.ball, outer), Relation::FirstInsideSecond | Relation::Equal)
}

/// Limit of the nested cells carrying a purely periodic code.
///
/// The cells for the `T` rotations of the code are refined together: the
/// cell for rotation `j` at depth `n + 1` is the preimage of the cell for
/// rotation `j + 1` at depth `n` inside the depth-1 cell of letter `j`. Once
/// the degree `D` of the `T`-th iterate and `beta = D e_{n+T} - e_n` repeat,
/// the exponents follow `e_{n+T} = (e_n + beta)/D` and converge to
/// `beta/(D - 1)`, or decrease without bound when `D = 1`.
pub fn periodic_code_ball(r: &RationalMapSpec, code: &Code) -> Result<PeriodicBall> {
    if !code.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    let f = polynomial_of(r)?;
    let p = f.prime();
    let w = &code.period;
    let t = w.len();
    let level1 = preimage_cells(&f, &Ball::unit(p));
    let mut cur: Vec<PreimageCell> = Vec::with_capacity(t);
    for &a in w {
        cur.push(level1.cells.get(a).cloned().ok_or(Error::UnrealizedCode(1))?);
    }
    // hist[n - 1][j]: cell for rotation j at depth n
    let mut hist = vec![cur.clone()];
    let mut settled: Option<(usize, Q)> = None;
    let mut streak = 0;
    while hist.len() < MAX_CHAIN_DEPTH {
        let n = hist.len();
        let mut next = Vec::with_capacity(t);
        for j in 0..t {
            let target = &cur[(j + 1) % t].ball;
            let outer = &level1.cells[w[j]].ball;
            let mut hits = preimage_cells(&f, target).cells.into_iter().filter(|c| within(c, outer));
            let c = hits.next().ok_or(Error::UnrealizedCode(n + 1))?;
            if hits.next().is_some() {
                return Err(Error::AmbiguousCode);
            }
            next.push(c);
        }
        hist.push(next.clone());
        cur = next;
        if let Some(db) = step_data(&hist, t) {
            if settled.as_ref() == Some(&db) {
                streak += 1;
            } else {
                settled = Some(db);
                streak = 0;
            }
            if streak >= 2 {
                break;
            }
        }
    }
    let chain: Vec<QExp> = hist.iter().map(|lvl| lvl[0].ball.exponent.clone()).collect();
    let deepest = hist.last().unwrap()[0].ball.clone();
    let d = step_data(&hist, t).map(|(d, _)| d).unwrap_or(1);
    let Some((d, beta)) = settled.filter(|_| streak >= 2) else {
        return Ok(PeriodicBall {
            exponent: Some(deepest.exponent.clone()),
            limit: TreePoint::cut(deepest.center, deepest.exponent),
            d,
            status: CodeStatus::Unknown,
            chain,
        });
    };
    let iterate = iterate_poly(r, t)?;
    if d == 1 && beta < Q::zero() {
        let g = iterate.sub(&QPoly::x());
        let (roots, _) = g.rational_roots();
        let point = roots
            .into_iter()
            .map(|(z, _)| PadicScalar::from_q(p, z))
            .find(|z| deepest.affine_contains(z));
        let limit = match point {
            Some(z) => TreePoint::Classical(Point::Finite(z)),
            None => TreePoint::cut(deepest.center.clone(), deepest.exponent.clone()),
        };
        return Ok(PeriodicBall { limit, d, exponent: None, status: CodeStatus::RealizedPoint, chain });
    }
    let limit_q = if d == 1 { deepest.exponent.q.clone() } else { beta / q_int(d as i64 - 1) };
    let ball = Ball::closed(deepest.center.clone(), QExp::new(limit_q)).canonical();
    let img = image_ball(&ScalarPoly::from_qpoly(p, &iterate), &ball)?;
    let status = if ball_relation(&img.image, &ball) == Relation::Equal {
        CodeStatus::RealizedBall
    } else {
        CodeStatus::EmptyLimit
    };
    Ok(PeriodicBall {
        exponent: Some(ball.exponent.clone()),
        limit: TreePoint::cut(ball.center, ball.exponent),
        d,
        status,
        chain,
    })
}

/// `(D, beta)` for the last full period of the chain for rotation 0.
fn step_data(hist: &[Vec<PreimageCell>], t: usize) -> Option<(usize, Q)> {
    let top = hist.len();
    if top <= t {
        return None;
    }
    // P^i maps the rotation-0 cell at depth `top` to the rotation-i cell at depth `top - i`
    let d: usize = (0..t).map(|i| hist[top - 1 - i][i].degree).product();
    let deep = &hist[top - 1][0].ball.exponent.q;
    let shallow = &hist[top - 1 - t][0].ball.exponent.q;
    Some((d, q_int(d as i64) * deep - shallow))
}

fn iterate_poly(r: &RationalMapSpec, t: usize) -> Result<QPoly> {
    let f = r.as_polynomial().ok_or_else(|| Error::InvalidMap("expected a polynomial".into()))?;
    let mut g = QPoly::x();
    for _ in 0..t {
        g = f.compose(&g);
    }
    Ok(g)
}
