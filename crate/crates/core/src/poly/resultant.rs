use num_traits::{One, Zero};

use crate::padic::Q;

/// Sylvester matrix of `a` (degree `m`) and `b` (degree `n`), coefficient
/// lists lowest degree first and padded to the stated degrees. Padding makes
/// this the homogeneous resultant when a leading coefficient vanishes.
pub fn sylvester_matrix(a: &[Q], m: usize, b: &[Q], n: usize) -> Vec<Vec<Q>> {
    let size = m + n;
    let get = |c: &[Q], i: usize| c.get(i).cloned().unwrap_or_else(Q::zero);
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![Q::zero(); size];
        for j in 0..=m {
            row[r + j] = get(a, m - j);
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![Q::zero(); size];
        for j in 0..=n {
            row[r + j] = get(b, n - j);
        }
        rows.push(row);
    }
    rows
}

/// Exact determinant by Gaussian elimination over `Q`.
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// `Res(A, B)` of two binary forms of degree `d` given by their
/// dehomogenized coefficient lists.
pub fn resultant_homogeneous(a: &[Q], b: &[Q], d: usize) -> Q {
    if d == 0 {
        return Q::one();
    }
    determinant(sylvester_matrix(a, d, b, d))
}
