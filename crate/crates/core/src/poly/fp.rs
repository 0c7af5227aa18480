//! Dense polynomials over a [`FiniteField`], lowest degree first.

use crate::padic::FiniteField;

pub fn trim(mut c: Vec<u32>) -> Vec<u32> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

pub fn degree(c: &[u32]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

pub fn eval(f: &FiniteField, c: &[u32], x: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
}

pub fn sub(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let get = |c: &[u32], i: usize| c.get(i).copied().unwrap_or(0);
    trim((0..n).map(|i| f.sub(get(a, i), get(b, i))).collect())
}

pub fn mul(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = f.add(c[i + j], f.mul(x, y));
        }
    }
    trim(c)
}

pub fn derivative(f: &FiniteField, a: &[u32]) -> Vec<u32> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| f.mul(x, f.from_int(i as i64)))
            .collect(),
    )
}

pub fn divrem(f: &FiniteField, a: &[u32], d: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let d = trim(d.to_vec());
    let dd = d.len().checked_sub(1).expect("division by zero polynomial");
    let inv = f.inv(d[dd]).unwrap();
    let mut r = trim(a.to_vec());
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = f.mul(r[i + dd], inv);
        if c != 0 {
            for (j, &b) in d.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, b));
            }
        }
        q[i] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = divrem(f, &x, &y).1;
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let inv = f.inv(l).unwrap();
        x = x.iter().map(|&c| f.mul(c, inv)).collect();
    }
    x
}

/// Roots lying in `f` with multiplicities, by exhaustive search.
pub fn roots(f: &FiniteField, a: &[u32]) -> Vec<(u32, usize)> {
    let mut g = trim(a.to_vec());
    let mut out = Vec::new();
    if g.is_empty() {
        return out;
    }
    for x in 0..f.order() {
        let mut m = 0;
        while degree(&g).unwrap_or(0) > 0 && eval(f, &g, x) == 0 {
            g = divrem(f, &g, &[f.neg(x), 1]).0;
            m += 1;
        }
        if m > 0 {
            out.push((x, m));
        }
    }
    out
}
