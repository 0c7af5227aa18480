//! Valuations, exponents, tower scalars and residue fields.

mod ff;
mod qexp;
mod scalar;

pub use ff::{FiniteField, Residue};
pub use qexp::{QExp, Valuation};
pub use scalar::PadicScalar;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a prime small enough for the residue-field tables.
pub fn check_prime(p: u64) -> Result<u32> {
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(p as u32)
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Multiplicity of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: u32) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// `v_p(x)` of a nonzero rational.
pub fn vp_q(x: &Q, p: u32) -> i64 {
    vp_int(x.numer(), p) - vp_int(x.denom(), p)
}

/// Exact `v_p(x)`, with `v_p(0) = +inf`.
pub fn valuation(x: &Q, p: u64) -> Result<Valuation> {
    let p = check_prime(p)?;
    Ok(valuation_q(x, p))
}

pub fn valuation_q(x: &Q, p: u32) -> Valuation {
    if x.is_zero() {
        Valuation::Infinity
    } else {
        Valuation::Finite(q_int(vp_q(x, p)))
    }
}

/// Residue of a rational with nonnegative valuation, `None` otherwise.
pub fn reduce_rational(x: &Q, p: u32) -> Option<u32> {
    if x.is_zero() {
        return Some(0);
    }
    if vp_q(x, p) < 0 {
        return None;
    }
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let d = x.denom().mod_floor(&pb).to_u64().unwrap();
    let p64 = p as u64;
    Some(((n * pow_mod(d, p64 - 2, p64)) % p64) as u32)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// A point of `P^1` over the scalar tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(PadicScalar),
    Infinity,
}

impl Point {
    pub fn rational(p: u32, x: Q) -> Self {
        Point::Finite(PadicScalar::from_q(p, x))
    }

    pub fn finite(&self) -> Option<&PadicScalar> {
        match self {
            Point::Finite(z) => Some(z),
            Point::Infinity => None,
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Finite(z) => write!(f, "{z}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// The reduction map `P^1(C_p) -> P^1(F_p)`.
pub fn reduce_point(z: &Point) -> Residue {
    match z {
        Point::Infinity => Residue::Infinity,
        Point::Finite(x) => match x.residue() {
            Some(r) => Residue::Finite(r),
            None => Residue::Infinity,
        },
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `n/d`, or a plain decimal-free integer string.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub(crate) fn floor_q(q: &Q) -> BigInt {
    q.floor().to_integer()
}
