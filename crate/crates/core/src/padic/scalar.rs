use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::{floor_q, fmt_q, q_int, reduce_rational, vp_q, Valuation, Q};
use crate::error::{Error, Result};
use crate::poly::QPoly;

/// An element of the totally ramified tower `U_e Q_p(p^(1/e))`.
///
/// Stored as `sum a_f p^f` over distinct fractional exponents `f` in `[0, 1)`
/// with nonzero rational coefficients. Since the `f` are distinct mod 1, the
/// valuation is exactly `min(v_p(a_f) + f)`, and the residue field stays `F_p`.
/// Rationals are the elements supported on `f = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    p: u32,
    terms: BTreeMap<Q, Q>,
}

fn p_q(p: u32) -> Q {
    q_int(p as i64)
}

impl PadicScalar {
    pub fn zero(p: u32) -> Self {
        PadicScalar { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::from_q(p, Q::one())
    }

    pub fn from_q(p: u32, x: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert(Q::zero(), x);
        }
        PadicScalar { p, terms }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_q(p, q_int(n))
    }

    /// `p^e` for any rational `e`.
    pub fn p_pow(p: u32, e: &Q) -> Self {
        Self::monomial(p, Q::one(), e)
    }

    /// `a * p^e`.
    pub fn monomial(p: u32, a: Q, e: &Q) -> Self {
        if a.is_zero() {
            return Self::zero(p);
        }
        let n = floor_q(e);
        let f = e - Q::from_integer(n.clone());
        let scale = pow_p(p, &n);
        let mut terms = BTreeMap::new();
        terms.insert(f, a * scale);
        PadicScalar { p, terms }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// `(f, a_f)` pairs in increasing `f`.
    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|f| f.is_zero())
    }

    pub fn to_rational(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if self.is_rational() {
            self.terms.get(&Q::zero()).cloned()
        } else {
            None
        }
    }

    /// Least common denominator of the exponents present.
    pub fn ramification(&self) -> BigInt {
        self.terms
            .keys()
            .fold(BigInt::one(), |acc, f| acc.lcm(f.denom()))
    }

    pub fn valuation(&self) -> Valuation {
        self.terms
            .iter()
            .map(|(f, a)| Valuation::Finite(q_int(vp_q(a, self.p)) + f))
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    /// Residue in `F_p` when the valuation is nonnegative.
    pub fn residue(&self) -> Option<u32> {
        match self.valuation() {
            Valuation::Infinity => Some(0),
            Valuation::Finite(v) if v >= Q::zero() => match self.terms.get(&Q::zero()) {
                Some(a) => reduce_rational(a, self.p),
                None => Some(0),
            },
            _ => None,
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "scalars over different primes");
    }

    fn insert(terms: &mut BTreeMap<Q, Q>, f: Q, a: Q) {
        if a.is_zero() {
            return;
        }
        match terms.get_mut(&f) {
            Some(c) => {
                *c += a;
                if c.is_zero() {
                    terms.remove(&f);
                }
            }
            None => {
                terms.insert(f, a);
            }
        }
    }

    pub fn mul_q(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.p);
        }
        PadicScalar {
            p: self.p,
            terms: self.terms.iter().map(|(f, a)| (f.clone(), a * s)).collect(),
        }
    }

    pub fn add_q(&self, s: &Q) -> Self {
        self + &Self::from_q(self.p, s.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(self.p);
        let mut b = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.terms.len() == 1 {
            let (f, a) = self.terms.iter().next().unwrap();
            return Ok(Self::monomial(self.p, a.recip(), &-f));
        }
        // Invert in Q[t]/(t^e - p), where t = p^(1/e); the modulus is Eisenstein.
        let e = self.ramification();
        let eu: usize = e.clone().try_into().expect("ramification index too large");
        let mut c = vec![Q::zero(); eu];
        for (f, a) in &self.terms {
            let i: usize = (f * Q::from_integer(e.clone())).to_integer().try_into().unwrap();
            c[i] = a.clone();
        }
        let x = QPoly::new(c);
        let mut m = vec![Q::zero(); eu + 1];
        m[0] = -p_q(self.p);
        m[eu] = Q::one();
        let m = QPoly::new(m);
        let (g, s, _) = x.ext_gcd(&m);
        debug_assert_eq!(g.degree(), Some(0));
        let s = s.scale(&g.coeff(0).recip());
        let mut r = Self::zero(self.p);
        for (i, a) in s.coeffs().iter().enumerate() {
            let f = Q::new(BigInt::from(i), e.clone());
            r = &r + &Self::monomial(self.p, a.clone(), &f);
        }
        Ok(r)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inverse()?)
    }

    /// Digits `d_s in 1..p` at exponents `s` with `s < bound` (or `s <= bound`
    /// when `inclusive`), listed in increasing `s`.
    ///
    /// Every element has a unique expansion `sum d_s p^s`, so truncating it
    /// below a radius yields a canonical center for the ball.
    pub fn digits(&self, bound: &Q, inclusive: bool) -> Vec<(Q, u32)> {
        let pq = p_q(self.p);
        let mut out = Vec::new();
        for (f, a) in &self.terms {
            let v = vp_q(a, self.p);
            let mut u = a / pow_p(self.p, &BigInt::from(v));
            let mut s = f + q_int(v);
            loop {
                let stop = if inclusive { &s > bound } else { &s >= bound };
                if stop || u.is_zero() {
                    break;
                }
                let d = reduce_rational(&u, self.p).expect("unit has a residue");
                if d != 0 {
                    out.push((s.clone(), d));
                }
                u = (u - q_int(d as i64)) / &pq;
                s += Q::one();
            }
        }
        out.sort();
        out
    }

    pub fn from_digits(p: u32, digits: &[(Q, u32)]) -> Self {
        let mut r = Self::zero(p);
        for (s, d) in digits {
            r = &r + &Self::monomial(p, q_int(*d as i64), s);
        }
        r
    }

    /// Canonical representative of the class of `self` modulo elements of
    /// valuation `>= bound` (or `> bound` when `inclusive`).
    pub fn truncate(&self, bound: &Q, inclusive: bool) -> Self {
        Self::from_digits(self.p, &self.digits(bound, inclusive))
    }
}

fn pow_p(p: u32, n: &BigInt) -> Q {
    let pb = BigInt::from(p);
    if n >= &BigInt::zero() {
        let e: u32 = n.try_into().expect("exponent too large");
        Q::from_integer(Pow::pow(pb, e))
    } else {
        let e: u32 = (-n).try_into().expect("exponent too large");
        Q::new(BigInt::one(), Pow::pow(pb, e))
    }
}

impl Add for &PadicScalar {
    type Output = PadicScalar;
    fn add(self, o: &PadicScalar) -> PadicScalar {
        self.check(o);
        let mut terms = self.terms.clone();
        for (f, a) in &o.terms {
            PadicScalar::insert(&mut terms, f.clone(), a.clone());
        }
        PadicScalar { p: self.p, terms }
    }
}

impl Sub for &PadicScalar {
    type Output = PadicScalar;
    fn sub(self, o: &PadicScalar) -> PadicScalar {
        self + &(-o)
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar {
            p: self.p,
            terms: self.terms.iter().map(|(f, a)| (f.clone(), -a)).collect(),
        }
    }
}

impl Mul for &PadicScalar {
    type Output = PadicScalar;
    fn mul(self, o: &PadicScalar) -> PadicScalar {
        self.check(o);
        let pq = p_q(self.p);
        let mut terms = BTreeMap::new();
        for (f, a) in &self.terms {
            for (g, b) in &o.terms {
                let mut h = f + g;
                let mut c = a * b;
                if h >= Q::one() {
                    h -= Q::one();
                    c *= &pq;
                }
                PadicScalar::insert(&mut terms, h, c);
            }
        }
        PadicScalar { p: self.p, terms }
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, a)| {
                if e.is_zero() {
                    fmt_q(a)
                } else if a.is_one() {
                    format!("{}^({})", self.p, fmt_q(e))
                } else {
                    format!("{}*{}^({})", fmt_q(a), self.p, fmt_q(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::q_frac;

    fn s(p: u32, a: i64, b: i64) -> PadicScalar {
        PadicScalar::from_q(p, q_frac(a, b))
    }

    #[test]
    fn tower_valuation_is_exact() {
        let t = PadicScalar::p_pow(3, &q_frac(1, 3));
        let x = &PadicScalar::one(3) + &t;
        assert_eq!(x.valuation(), Valuation::from_int(0));
        assert_eq!(t.valuation(), Valuation::Finite(q_frac(1, 3)));
        let cube = t.pow(3);
        assert_eq!(cube, s(3, 3, 1));
        let y = &t + &PadicScalar::p_pow(3, &q_frac(4, 9));
        assert_eq!(y.valuation(), Valuation::Finite(q_frac(1, 3)));
    }

    #[test]
    fn inverse_round_trips() {
        let t = PadicScalar::p_pow(3, &q_frac(1, 3));
        let x = &(&PadicScalar::one(3) + &t) + &t.pow(2).mul_q(&q_int(5));
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, PadicScalar::one(3));
        assert_eq!(s(5, 2, 7).inverse().unwrap(), s(5, 7, 2));
        assert!(PadicScalar::zero(5).inverse().is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(s(3, 4, 1).residue(), Some(1));
        assert_eq!(s(3, 1, 3).residue(), None);
        let x = &s(3, 2, 1) + &PadicScalar::p_pow(3, &q_frac(1, 2));
        assert_eq!(x.residue(), Some(2));
    }

    #[test]
    fn digits_are_canonical() {
        let x = s(3, -1, 1);
        let d = x.digits(&q_int(3), false);
        assert_eq!(d, vec![(q_int(0), 2), (q_int(1), 2), (q_int(2), 2)]);
        assert_eq!(x.truncate(&q_int(3), false), s(3, 26, 1));
        let y = &s(3, 10, 1) + &PadicScalar::p_pow(3, &q_frac(4, 3));
        let d = y.digits(&q_int(2), false);
        assert_eq!(d, vec![(q_int(0), 1), (q_frac(4, 3), 1)]);
        assert_eq!(s(3, 3, 1).truncate(&q_int(1), true), s(3, 3, 1));
        assert_eq!(s(3, 3, 1).truncate(&q_int(1), false), PadicScalar::zero(3));
    }
}
