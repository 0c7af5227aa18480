use num_traits::Zero;

use super::image::image_ball;
use super::spec::RationalMapSpec;
use crate::error::{Error, Result};
use crate::padic::{PadicScalar, Point, QExp, Valuation, Q};
use crate::poly::ScalarPoly;
use crate::tree::{Ball, TreePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionResult {
    pub point: TreePoint,
    pub degree: usize,
}

const MAX_SERIES_TERMS: usize = 400;

/// `R_*(S)` with the local degree.
///
/// Polynomials act through [`image_ball`]; Möbius maps through their
/// affine and inversion factors; other rational maps only on balls free of
/// poles, by expanding `1/Q` as a power series whose truncation is certified
/// by the ultrametric tail bound.
pub fn tree_action(r: &RationalMapSpec, s: &TreePoint) -> Result<ActionResult> {
    let ball = match s {
        TreePoint::Classical(z) => return classical_action(r, z),
        TreePoint::Rational(b) | TreePoint::Irrational(b) => b,
    };
    let (image, degree) = if let Some(f) = r.scalar_polynomial() {
        let im = image_ball(&f, ball)?;
        (im.image, im.local_degree)
    } else if r.degree() == 1 {
        (mobius_image(r, ball)?, 1)
    } else {
        series_image(r, ball)?
    };
    Ok(ActionResult { point: TreePoint::cut(image.canonical().center, image.exponent), degree })
}

fn classical_action(r: &RationalMapSpec, z: &Point) -> Result<ActionResult> {
    let w = r.eval(z)?;
    let p = r.prime();
    let (num, den) = (ScalarPoly::from_qpoly(p, r.num()), ScalarPoly::from_qpoly(p, r.den()));
    let order = |f: &ScalarPoly| f.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let degree = match (z, &w) {
        (Point::Finite(a), Point::Finite(b)) => order(&num.sub_scaled(&den, b).taylor_shift(a)),
        (Point::Finite(a), Point::Infinity) => order(&den.taylor_shift(a)),
        (Point::Infinity, _) => {
            let (dn, dd) = (r.num().degree().unwrap(), r.den().degree().unwrap());
            if dn != dd {
                dn.abs_diff(dd)
            } else {
                let c = r.num().lead() / r.den().lead();
                let rest = r.num().sub(&r.den().scale(&c));
                dn - rest.degree().unwrap_or(0)
            }
        }
    };
    Ok(ActionResult { point: TreePoint::Classical(w), degree: degree.max(1) })
}

trait SubScaled {
    fn sub_scaled(&self, o: &ScalarPoly, c: &PadicScalar) -> ScalarPoly;
}

impl SubScaled for ScalarPoly {
    fn sub_scaled(&self, o: &ScalarPoly, c: &PadicScalar) -> ScalarPoly {
        self.add(&o.scale(&-c))
    }
}

fn neg_v(x: &PadicScalar) -> Q {
    -x.valuation().finite().cloned().expect("nonzero scalar")
}

/// Affine image `alpha z + beta` of a ball.
fn affine(b: &Ball, alpha: &PadicScalar, beta: &PadicScalar) -> Ball {
    Ball::closed(&(alpha * &b.center) + beta, b.exponent.add_q(&neg_v(alpha)))
}

fn invert(b: &Ball) -> Result<Ball> {
    let p = b.prime();
    match b.center.valuation() {
        v if b.radius_admits(&v) => Ok(Ball::closed(PadicScalar::zero(p), b.exponent.neg())),
        Valuation::Finite(v) => {
            let two_v = &v + &v;
            Ok(Ball::closed(b.center.inverse()?, b.exponent.add_q(&two_v)))
        }
        Valuation::Infinity => unreachable!("zero center lies in the ball"),
    }
}

fn mobius_image(r: &RationalMapSpec, b: &Ball) -> Result<Ball> {
    let p = r.prime();
    let sc = |x: Q| PadicScalar::from_q(p, x);
    let (a, bb) = (r.num().coeff(1), r.num().coeff(0));
    let (c, d) = (r.den().coeff(1), r.den().coeff(0));
    if c.is_zero() {
        return Ok(affine(b, &sc(&a / &d), &sc(&bb / &d)));
    }
    let w = affine(b, &sc(c.clone()), &sc(d.clone()));
    let u = invert(&w)?;
    let k = (&bb * &c - &a * &d) / &c;
    Ok(affine(&u, &sc(k), &sc(&a / &c)))
}

fn series_image(r: &RationalMapSpec, b: &Ball) -> Result<(Ball, usize)> {
    let p = r.prime();
    let e = &b.exponent;
    let num = ScalarPoly::from_qpoly(p, r.num()).taylor_shift(&b.center);
    let den = ScalarPoly::from_qpoly(p, r.den()).taylor_shift(&b.center);
    let q0 = den.coeff(0);
    if q0.is_zero() {
        return Err(Error::UnsupportedPoleConfiguration);
    }
    let lq0 = neg_v(&q0);
    // The constant term must dominate Q on the ball, so Q has no zero there.
    let dom = den.newton_max(e, 1).map(|(m, _)| m);
    let Some(dom) = dom else {
        return Err(Error::DegenerateMap("constant denominator handled as polynomial".into()));
    };
    if dom.q >= lq0 {
        return Err(Error::UnsupportedPoleConfiguration);
    }
    let log_delta = dom.q.clone() - &lq0;
    let sup_p = num.newton_max(e, 0).map(|(m, _)| m.q).unwrap_or_else(Q::zero);
    let dq = den.degree().unwrap();
    let dp = num.degree().unwrap_or(0);
    let inv_q0 = q0.inverse()?;
    let mut s: Vec<PadicScalar> = vec![inv_q0.clone()];
    let mut coeffs: Vec<PadicScalar> = Vec::new();
    let mut best: Option<(QExp, usize)> = None;
    for n in 0..MAX_SERIES_TERMS {
        if n > 0 {
            let mut acc = PadicScalar::zero(p);
            for k in 1..=n.min(dq) {
                acc = &acc + &(&den.coeff(k) * &s[n - k]);
            }
            s.push(-&(&acc * &inv_q0));
        }
        let mut rn = PadicScalar::zero(p);
        for i in 0..=n.min(dp) {
            rn = &rn + &(&num.coeff(i) * &s[n - i]);
        }
        coeffs.push(rn.clone());
        if n >= 1 {
            if let Valuation::Finite(v) = rn.valuation() {
                let t = e.scale(&Q::from_integer((n as i64).into())).add_q(&-v);
                best = match best {
                    Some((m, k)) if t.q < m.q => Some((m, k)),
                    Some((m, _)) if t.q == m.q => Some((m.max(&t), n)),
                    _ => Some((t, n)),
                };
            }
        }
        // Bound on log|r_k| r^k for every k > n.
        if let Some((m, _)) = &best {
            let k = n + 1;
            let steps = if k > dp { (k - dp).div_ceil(dq) } else { 0 };
            let bound = &sup_p + &lq0 + &log_delta * Q::from_integer((steps as i64).into());
            if bound < m.q {
                let (m, deg) = best.unwrap();
                return Ok((Ball::closed(coeffs[0].clone(), m), deg));
            }
        }
    }
    Err(Error::DegenerateMap("series truncation did not certify".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, q_int};
    use crate::poly::QPoly;

    fn s2(n: i64) -> PadicScalar {
        PadicScalar::from_int(2, n)
    }

    #[test]
    fn square_on_dyadic_cut() {
        let sq = RationalMapSpec::polynomial(2, QPoly::from_ints(&[0, 0, 1])).unwrap();
        let r = tree_action(&sq, &TreePoint::cut(s2(1), QExp::int(-2))).unwrap();
        assert_eq!(r.point, TreePoint::cut(s2(1), QExp::int(-3)));
        assert_eq!(r.degree, 1);
    }

    #[test]
    fn translation_is_isometry() {
        let m = RationalMapSpec::new(3, QPoly::from_ints(&[1, 1]), QPoly::from_ints(&[1])).unwrap();
        let s = TreePoint::cut(PadicScalar::from_int(3, 4), QExp::int(-2));
        let r = tree_action(&m, &s).unwrap();
        assert_eq!(r.point, TreePoint::cut(PadicScalar::from_int(3, 5), QExp::int(-2)));
    }

    #[test]
    fn irrational_spine_point() {
        let sq = RationalMapSpec::polynomial(3, QPoly::from_ints(&[0, 0, 1])).unwrap();
        let s = TreePoint::cut(PadicScalar::zero(3), QExp::flagged(q_frac(1, 2)));
        let r = tree_action(&sq, &s).unwrap();
        assert_eq!(r.point, TreePoint::cut(PadicScalar::zero(3), QExp::flagged(q_int(1))));
        assert!(matches!(r.point, TreePoint::Irrational(_)));
        assert_eq!(r.degree, 2);
    }

    #[test]
    fn inversion() {
        let inv = RationalMapSpec::new(3, QPoly::from_ints(&[1]), QPoly::from_ints(&[0, 1])).unwrap();
        let r = tree_action(&inv, &TreePoint::cut(PadicScalar::zero(3), QExp::int(2))).unwrap();
        assert_eq!(r.point, TreePoint::cut(PadicScalar::zero(3), QExp::int(-2)));
        let r = tree_action(&inv, &TreePoint::cut(PadicScalar::from_int(3, 1), QExp::int(-1))).unwrap();
        assert_eq!(r.point, TreePoint::cut(PadicScalar::from_int(3, 1), QExp::int(-1)));
        let r = tree_action(&inv, &TreePoint::cut(PadicScalar::from_int(3, 3), QExp::int(-3))).unwrap();
        assert_eq!(r.point, TreePoint::cut(PadicScalar::from_q(3, q_frac(1, 3)), QExp::int(-1)));
    }

    #[test]
    fn rational_map_series() {
        // (z + 1)/z^2 = 2 - 3t + 4t^2 - ... at z = 1 + t; on |t| <= 1/3 the
        // linear and quadratic terms tie, on |t| <= 1/9 the linear term wins
        let r = RationalMapSpec::new(3, QPoly::from_ints(&[1, 1]), QPoly::from_ints(&[0, 0, 1])).unwrap();
        let a = tree_action(&r, &TreePoint::cut(PadicScalar::from_int(3, 1), QExp::int(-1))).unwrap();
        assert_eq!(a.point, TreePoint::cut(PadicScalar::from_int(3, 2), QExp::int(-2)));
        assert_eq!(a.degree, 2);
        let a = tree_action(&r, &TreePoint::cut(PadicScalar::from_int(3, 1), QExp::int(-2))).unwrap();
        assert_eq!(a.point, TreePoint::cut(PadicScalar::from_int(3, 2), QExp::int(-3)));
        assert_eq!(a.degree, 1);
        let err = tree_action(&r, &TreePoint::gauss(3));
        assert_eq!(err, Err(Error::UnsupportedPoleConfiguration));
    }

    #[test]
    fn classical_points() {
        let sq = RationalMapSpec::polynomial(3, QPoly::from_ints(&[0, 0, 1])).unwrap();
        let r = tree_action(&sq, &TreePoint::classical(PadicScalar::zero(3))).unwrap();
        assert_eq!(r.degree, 2);
        let r = tree_action(&sq, &TreePoint::Classical(Point::Infinity)).unwrap();
        assert_eq!((r.point, r.degree), (TreePoint::Classical(Point::Infinity), 2));
    }
}
