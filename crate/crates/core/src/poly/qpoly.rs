use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::padic::{fmt_q, q_int, PadicScalar, Q};

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    c: Vec<Q>,
}

impl QPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q_int(x)).collect())
    }

    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn constant(a: Q) -> Self {
        Self::new(vec![a])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monomial(a: Q, k: usize) -> Self {
        let mut c = vec![Q::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, s: &Q) -> QPoly {
        Self::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, n: usize) -> QPoly {
        let mut r = Self::constant(Q::one());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let lead_inv = d.lead().recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] -= &c * b;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` not necessarily monic.
    pub fn ext_gcd(&self, o: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(Q::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(Q::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        (r0, s0, t0)
    }

    pub fn derivative(&self) -> QPoly {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * q_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_scalar(&self, p: u32, x: &PadicScalar) -> PadicScalar {
        self.c.iter().rev().fold(PadicScalar::zero(p), |acc, a| {
            (&acc * x).add_q(a)
        })
    }

    pub fn compose(&self, g: &QPoly) -> QPoly {
        self.c
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(g).add(&Self::constant(a.clone())))
    }

    /// Coefficients of `P(z + a)`.
    pub fn taylor_shift(&self, a: &Q) -> QPoly {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                let t = a * &c[j + 1];
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Primitive integer polynomial proportional to `self`.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        let l = self.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|a| a / &g).collect()
    }

    /// Rational roots with multiplicities, in increasing order.
    ///
    /// Candidates come from the rational root theorem; divisor enumeration
    /// uses trial division, so roots whose numerator or denominator has a
    /// prime factor beyond the search bound may be missed. The returned flag
    /// is `false` when that could have happened.
    pub fn rational_roots(&self) -> (Vec<(Q, usize)>, bool) {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return (roots, true);
        }
        let mut f = self.clone();
        let zeros = f.c.iter().take_while(|a| a.is_zero()).count();
        if zeros > 0 {
            roots.push((Q::zero(), zeros));
            f = QPoly::new(f.c[zeros..].to_vec());
        }
        if f.degree() == Some(0) {
            return (roots, true);
        }
        let ints = f.to_primitive_integer();
        let (num_divs, ok1) = divisors(&ints[0].abs());
        let (den_divs, ok2) = divisors(&ints.last().unwrap().abs());
        let mut cands = BTreeSet::new();
        for r in &num_divs {
            for s in &den_divs {
                let q = Q::new(r.clone(), s.clone());
                cands.insert(q.clone());
                cands.insert(-q);
            }
        }
        for c in cands {
            let mut m = 0;
            let lin = QPoly::new(vec![-c.clone(), Q::one()]);
            loop {
                if f.degree().unwrap_or(0) == 0 || !f.eval(&c).is_zero() {
                    break;
                }
                f = f.divrem(&lin).0;
                m += 1;
            }
            if m > 0 {
                roots.push((c, m));
            }
        }
        roots.sort();
        (roots, ok1 && ok2)
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = 2u64;
    let mut complete = true;
    while BigInt::from(d) * BigInt::from(d) <= m {
        if d > TRIAL_LIMIT {
            complete = false;
            break;
        }
        let db = BigInt::from(d);
        let mut e = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            primes.push((db, e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in primes {
        let mut next = Vec::new();
        for dv in &divs {
            let mut x = dv.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &q;
            }
        }
        divs = next;
    }
    (divs, complete)
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let m = a.abs();
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let coef = if i > 0 && m.is_one() {
                String::new()
            } else if i > 0 && !m.is_integer() {
                format!("({})*", fmt_q(&m))
            } else if i > 0 {
                format!("{}*", fmt_q(&m))
            } else {
                fmt_q(&m)
            };
            let sign = match (out.is_empty(), a.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            out.push_str(&format!("{sign}{coef}{mono}"));
        }
        f.write_str(&out)
    }
}
