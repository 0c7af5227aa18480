use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{check_prime, vp_q, PadicScalar, Point, Q};
use crate::poly::{QPoly, ScalarPoly};

/// A rational map `P/Q` over `Q`, with coprime numerator and denominator,
/// scaled so its homogeneous coefficients have minimum valuation zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMapSpec {
    p: u32,
    num: QPoly,
    den: QPoly,
}

/// Scales `num/den` by one scalar so that `max(|a_i|, |b_j|) = 1`.
///
/// Maps already at minimum valuation zero are returned unchanged; otherwise
/// the divisor is the first coefficient of minimal valuation, scanning the
/// numerator then the denominator from the top degree down.
pub fn normalize(p: u64, num: QPoly, den: QPoly) -> Result<RationalMapSpec> {
    let p = check_prime(p)?;
    if den.is_zero() {
        return Err(Error::InvalidMap("zero denominator".into()));
    }
    if num.is_zero() {
        return Err(Error::InvalidMap("identically zero map".into()));
    }
    if num.gcd(&den).degree() != Some(0) {
        return Err(Error::InvalidMap("numerator and denominator share a factor".into()));
    }
    let d = num.degree().unwrap().max(den.degree().unwrap());
    if d == 0 {
        return Err(Error::InvalidMap("constant map".into()));
    }
    let scan = num.coeffs().iter().rev().chain(den.coeffs().iter().rev());
    let mut best: Option<(i64, &Q)> = None;
    for a in scan.filter(|a| !a.is_zero()) {
        let v = vp_q(a, p);
        if best.is_none_or(|(bv, _)| v < bv) {
            best = Some((v, a));
        }
    }
    let (v, a) = best.unwrap();
    if v == 0 {
        return Ok(RationalMapSpec { p, num, den });
    }
    let s = a.recip();
    Ok(RationalMapSpec { p, num: num.scale(&s), den: den.scale(&s) })
}

impl RationalMapSpec {
    pub fn new(p: u64, num: QPoly, den: QPoly) -> Result<Self> {
        normalize(p, num, den)
    }

    pub fn polynomial(p: u64, f: QPoly) -> Result<Self> {
        normalize(p, f, QPoly::constant(Q::one()))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap().max(self.den.degree().unwrap())
    }

    /// Homogeneous coefficient lists of `A(x, y)` and `B(x, y)`, padded to `d + 1`.
    pub fn homogeneous(&self) -> (Vec<Q>, Vec<Q>) {
        let d = self.degree();
        ((0..=d).map(|i| self.num.coeff(i)).collect(), (0..=d).map(|i| self.den.coeff(i)).collect())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `P/Q` as a single polynomial when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<QPoly> {
        if self.is_polynomial() {
            Some(self.num.scale(&self.den.coeff(0).recip()))
        } else {
            None
        }
    }

    pub fn scalar_polynomial(&self) -> Option<ScalarPoly> {
        self.as_polynomial().map(|f| ScalarPoly::from_qpoly(self.p, &f))
    }

    pub fn eval(&self, z: &Point) -> Result<Point> {
        match z {
            Point::Infinity => {
                let (dn, dd) = (self.num.degree().unwrap(), self.den.degree().unwrap());
                Ok(if dn > dd {
                    Point::Infinity
                } else if dn == dd {
                    Point::rational(self.p, self.num.lead() / self.den.lead())
                } else {
                    Point::rational(self.p, Q::zero())
                })
            }
            Point::Finite(x) => {
                let q = self.den.eval_scalar(self.p, x);
                if q.is_zero() {
                    return Ok(Point::Infinity);
                }
                Ok(Point::Finite(self.num.eval_scalar(self.p, x).div(&q)?))
            }
        }
    }

    pub fn eval_scalar(&self, x: &PadicScalar) -> Result<Point> {
        self.eval(&Point::Finite(x.clone()))
    }

    /// `R'(z)` at a rational non-pole.
    pub fn derivative_at(&self, z: &Q) -> Option<Q> {
        let q = self.den.eval(z);
        if q.is_zero() {
            return None;
        }
        let n = self.num.derivative().eval(z) * &q - self.num.eval(z) * self.den.derivative().eval(z);
        Some(n / (&q * &q))
    }
}

impl std::fmt::Display for RationalMapSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(poly) = self.as_polynomial() {
            write!(f, "{poly}")
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
