use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{check_prime, valuation_q, Valuation, Q};
use crate::poly::QPoly;

/// Formal conjugacy `g(z) = z + b_2 z^2 + ... + b_N z^N` with `g(f(z)) = lambda g(z)`
/// modulo `z^(N+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    pub lambda: Q,
    /// `coeffs[k]` is `b_k`; `b_0 = 0` and `b_1 = 1`.
    pub coeffs: Vec<Q>,
    pub valuations: Vec<Valuation>,
}

impl Linearization {
    pub fn conjugacy(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }
}

fn truncate(f: &QPoly, n: usize) -> QPoly {
    QPoly::new(f.coeffs().iter().take(n + 1).cloned().collect())
}

pub fn linearize(f: &QPoly, n: usize, p: u64) -> Result<Linearization> {
    let p = check_prime(p)?;
    if !f.coeff(0).is_zero() {
        return Err(Error::InvalidMap("linearization needs f(0) = 0".into()));
    }
    let lambda = f.coeff(1);
    if lambda.is_zero() {
        return Err(Error::ResonantMultiplier);
    }
    let mut lk = lambda.clone();
    for k in 2..=n {
        lk *= &lambda;
        if lk == lambda {
            return Err(Error::RootOfUnity(k - 1));
        }
    }
    let f = truncate(f, n);
    // powers[j] = f^j mod z^(n+1)
    let mut powers = vec![QPoly::constant(Q::one()), f.clone()];
    for j in 2..n {
        let next = truncate(&powers[j - 1].mul(&f), n);
        powers.push(next);
    }
    let mut b = vec![Q::zero(), Q::one()];
    let mut lk = lambda.clone();
    for k in 2..=n {
        lk *= &lambda;
        let s: Q = (1..k).map(|j| &b[j] * powers[j].coeff(k)).sum();
        b.push(s / (&lambda - &lk));
    }
    b.truncate(n + 1);
    let valuations = b.iter().map(|c| valuation_q(c, p)).collect();
    Ok(Linearization { lambda, coeffs: b, valuations })
}
