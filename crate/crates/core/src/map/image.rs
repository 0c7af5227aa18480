use crate::error::{Error, Result};
use crate::padic::{PadicScalar, QExp, Valuation, Q};
use crate::poly::ScalarPoly;
use crate::tree::{Ball, BallKind, Closure};

/// Image of a ball under a polynomial, with its Weierstrass degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallImage {
    pub image: Ball,
    pub local_degree: usize,
    /// Indices `k >= 1` attaining the Newton maximum.
    pub attaining: Vec<usize>,
}

/// Coefficients of `P(z + a)`.
pub fn taylor_shift(f: &ScalarPoly, a: &PadicScalar) -> ScalarPoly {
    f.taylor_shift(a)
}

/// `log_p sup |P|` on the closed or open ball `B(a, p^e)`, which is
/// `max_k (e k - v(c_k))` for the Taylor coefficients at `a`. With `e = None`
/// the ball is the point `a`. Returns `None` when the supremum is zero.
pub fn sup_on_ball(f: &ScalarPoly, a: &PadicScalar, e: Option<&QExp>) -> Option<QExp> {
    match e {
        None => f.eval(a).valuation().finite().map(|v| QExp::new(-v)),
        Some(e) => taylor_shift(f, a).newton_max(e, 0).map(|(m, _)| m),
    }
}

/// `P(B(a, p^e)) = B(P(a), p^e')` with `e' = max_{k>=1} (e k - v(c_k))`.
///
/// The degree is the largest attaining index on closed balls and the
/// smallest on open ones (the count of zeros strictly inside the radius).
pub fn image_ball(f: &ScalarPoly, b: &Ball) -> Result<BallImage> {
    if b.kind != BallKind::Affine {
        return Err(Error::UnsupportedPoleConfiguration);
    }
    let c = taylor_shift(f, &b.center);
    let (e, ks) = c
        .newton_max(&b.exponent, 1)
        .ok_or_else(|| Error::DegenerateMap("constant polynomial".into()))?;
    let local_degree = match b.closure {
        Closure::Closed => *ks.last().unwrap(),
        Closure::Open => ks[0],
    };
    Ok(BallImage {
        image: Ball::new(BallKind::Affine, c.coeff(0), e, b.closure),
        local_degree,
        attaining: ks,
    })
}

/// The largest ball around `b` mapped into `target`, which it then covers:
/// exponent `min_{k>=1} (rho + v(c_k)) / k` for the Taylor coefficients at `b`.
pub fn max_preimage_ball(f: &ScalarPoly, b: &PadicScalar, target: &Ball) -> Result<(Ball, usize)> {
    if target.kind != BallKind::Affine {
        return Err(Error::UnsupportedPoleConfiguration);
    }
    let c = taylor_shift(f, b);
    if !target.affine_contains(&c.coeff(0)) {
        return Err(Error::CenterMisses);
    }
    let mut best: Option<(QExp, Vec<usize>)> = None;
    for (k, a) in c.coeffs().iter().enumerate().skip(1) {
        let Valuation::Finite(v) = a.valuation() else { continue };
        let t = target.exponent.add_q(&v).scale(&Q::new(1.into(), (k as i64).into()));
        best = match best {
            None => Some((t, vec![k])),
            Some((m, mut ks)) => match t.q.cmp(&m.q) {
                std::cmp::Ordering::Less => Some((t, vec![k])),
                std::cmp::Ordering::Equal => {
                    ks.push(k);
                    Some((m.min(&t), ks))
                }
                std::cmp::Ordering::Greater => Some((m, ks)),
            },
        };
    }
    let (e, ks) = best.ok_or_else(|| Error::DegenerateMap("constant polynomial".into()))?;
    let deg = match target.closure {
        Closure::Closed => *ks.last().unwrap(),
        Closure::Open => ks[0],
    };
    Ok((Ball::new(BallKind::Affine, b.clone(), e, target.closure), deg))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, q_int, PadicScalar};
    use crate::poly::QPoly;

    fn sp(p: u32, c: Vec<Q>) -> ScalarPoly {
        ScalarPoly::from_qpoly(p, &QPoly::new(c))
    }

    fn s(p: u32, n: i64) -> PadicScalar {
        PadicScalar::from_int(p, n)
    }

    #[test]
    fn sup_examples() {
        let f = sp(3, vec![q_int(0), q_int(1), q_int(0), q_int(3)]);
        assert_eq!(sup_on_ball(&f, &s(3, 0), Some(&QExp::zero())), Some(QExp::zero()));
        assert_eq!(sup_on_ball(&f, &s(3, 1), None), Some(QExp::int(0)));
        let g = sp(3, vec![q_frac(1, 9), q_int(3)]);
        assert_eq!(sup_on_ball(&g, &s(3, 0), Some(&QExp::zero())), Some(QExp::int(2)));
    }

    #[test]
    fn image_examples() {
        let sq = sp(3, vec![q_int(0), q_int(0), q_int(1)]);
        let im = image_ball(&sq, &Ball::closed(s(3, 1), QExp::int(-1))).unwrap();
        assert_eq!(im.image, Ball::closed(s(3, 1), QExp::int(-1)));
        assert_eq!(im.local_degree, 1);
        let im = image_ball(&sq, &Ball::unit(3)).unwrap();
        assert_eq!((im.image, im.local_degree), (Ball::unit(3), 2));
        let f = sp(3, vec![q_int(0), q_frac(1, 3), q_int(0), q_frac(-1, 3)]);
        let im = image_ball(&f, &Ball::unit(3)).unwrap();
        assert_eq!(im.image, Ball::closed(s(3, 0), QExp::int(1)));
        assert_eq!((im.local_degree, im.attaining.clone()), (3, vec![1, 3]));
        let sq2 = sp(2, vec![q_int(0), q_int(0), q_int(1)]);
        let im = image_ball(&sq2, &Ball::closed(s(2, 1), QExp::int(-1))).unwrap();
        assert_eq!(im.image, Ball::closed(s(2, 1), QExp::int(-2)));
        assert_eq!(im.local_degree, 2);
        let open = image_ball(&sq, &Ball::open(s(3, 0), QExp::zero())).unwrap();
        assert_eq!(open.local_degree, 2);
        assert!(image_ball(&sp(3, vec![q_int(5)]), &Ball::unit(3)).is_err());
    }

    #[test]
    fn preimage_ball_examples() {
        let f = sp(3, vec![q_int(0), q_frac(1, 3), q_int(0), q_frac(-1, 3)]);
        let (b, d) = max_preimage_ball(&f, &s(3, 0), &Ball::unit(3)).unwrap();
        assert_eq!((b, d), (Ball::closed(s(3, 0), QExp::int(-1)), 1));
        let mut nonic = vec![q_int(0); 10];
        nonic[3] = q_frac(1, 3);
        nonic[9] = q_frac(-1, 3);
        let (b, d) = max_preimage_ball(&sp(3, nonic), &s(3, 0), &Ball::unit(3)).unwrap();
        assert_eq!((b, d), (Ball::closed(s(3, 0), QExp::new(q_frac(-1, 3))), 3));
        let bene = sp(3, vec![q_int(0), q_int(0), q_int(0), q_frac(1, 3), q_frac(2, 3)]);
        let (b, d) = max_preimage_ball(&bene, &s(3, 0), &Ball::unit(3)).unwrap();
        assert_eq!((b, d), (Ball::closed(s(3, 0), QExp::new(q_frac(-1, 3))), 3));
        let far = sp(3, vec![q_frac(1, 3), q_int(1)]);
        assert_eq!(max_preimage_ball(&far, &s(3, 0), &Ball::unit(3)), Err(Error::CenterMisses));
    }
}
