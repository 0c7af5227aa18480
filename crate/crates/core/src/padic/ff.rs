use std::fmt;

use crate::error::{Error, Result};

/// A point of `P^1` over a finite field; finite values are field indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Residue {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::Finite(x) => write!(f, "{x}"),
            Residue::Infinity => write!(f, "inf"),
        }
    }
}

/// `F_{p^k}` as `F_p[x]/(m)` with `m` the smallest monic irreducible of
/// degree `k`. Elements are indices whose base-`p` digits are the
/// coefficients, so `F_p` sits inside as `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
}

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

impl FiniteField {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        assert!(k >= 1);
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u32;
        let modulus = smallest_irreducible(p, k as usize);
        Ok(FiniteField { p, k, q, modulus })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut v = vec![0; self.k as usize];
        for d in v.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        v
    }

    fn index(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.index(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let s: Vec<u32> = self.digits(a).iter().map(|u| (self.p - u) % self.p).collect();
        self.index(&s)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c != 0 {
                for (j, &m) in self.modulus[..k].iter().enumerate() {
                    let t = i - k + j;
                    prod[t] = (prod[t] + (p - c) * m as u64) % p;
                }
                prod[i] = 0;
            }
        }
        let r: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.index(&r)
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut r = 1;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.q as u64 - 2))
        }
    }

    /// Whether `a` lies in the subfield `F_{p^j}`.
    pub fn in_subfield(&self, a: u32, j: u32) -> bool {
        self.pow(a, (self.p as u64).pow(j)) == a
    }
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    // g monic
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if c != 0 {
            for (j, &m) in g.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - c) * m as u64) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn monic(p: u32, deg: usize, idx: u64) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg + 1);
    let mut x = idx;
    for _ in 0..deg {
        v.push((x % p as u64) as u32);
        x /= p as u64;
    }
    v.push(1);
    v
}

fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k as u32);
    'outer: for idx in 0..count {
        let f = monic(p, k, idx);
        for dg in 1..=k / 2 {
            for j in 0..(p as u64).pow(dg as u32) {
                let g = monic(p, dg, j);
                if poly_rem(&f, &g, p).iter().all(|&c| c == 0) {
                    continue 'outer;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (5, 2), (2, 8), (3, 5)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            for x in 0..q {
                assert_eq!(f.pow(x, q as u64), x);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
                assert_eq!(f.add(x, f.neg(x)), 0);
            }
        }
    }

    #[test]
    fn prime_field_embeds() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.mul(2, 2), 1);
        assert!(f.in_subfield(2, 1));
        assert!(!f.in_subfield(3, 1));
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn too_large() {
        assert_eq!(FiniteField::new(2, 17), Err(Error::FieldTooLarge(1 << 17)));
        assert!(FiniteField::new(2, 16).is_ok());
    }
}
