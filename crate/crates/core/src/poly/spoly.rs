use crate::padic::{PadicScalar, QExp, Valuation, Q};

use super::QPoly;

/// Polynomial with coefficients in the scalar tower, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarPoly {
    p: u32,
    c: Vec<PadicScalar>,
}

impl ScalarPoly {
    pub fn new(p: u32, mut c: Vec<PadicScalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ScalarPoly { p, c }
    }

    pub fn from_qpoly(p: u32, f: &QPoly) -> Self {
        Self::new(p, f.coeffs().iter().map(|a| PadicScalar::from_q(p, a.clone())).collect())
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> PadicScalar {
        self.c.get(i).cloned().unwrap_or_else(|| PadicScalar::zero(self.p))
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.c.iter().map(|a| a.valuation()).collect()
    }

    pub fn eval(&self, x: &PadicScalar) -> PadicScalar {
        self.c
            .iter()
            .rev()
            .fold(PadicScalar::zero(self.p), |acc, a| &(&acc * x) + a)
    }

    /// Coefficients of `P(z + a)` by repeated synthetic division.
    pub fn taylor_shift(&self, a: &PadicScalar) -> ScalarPoly {
        let mut c = self.c.clone();
        let n = c.len();
        if a.is_zero() {
            return self.clone();
        }
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                let t = a * &c[j + 1];
                c[j] = &c[j] + &t;
            }
        }
        Self::new(self.p, c)
    }

    pub fn sub_const(&self, a: &PadicScalar) -> ScalarPoly {
        let mut c = self.c.clone();
        if c.is_empty() {
            c.push(PadicScalar::zero(self.p));
        }
        c[0] = &c[0] - a;
        Self::new(self.p, c)
    }

    pub fn add(&self, o: &ScalarPoly) -> ScalarPoly {
        let n = self.c.len().max(o.c.len());
        Self::new(self.p, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &ScalarPoly) -> ScalarPoly {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let mut c = vec![PadicScalar::zero(self.p); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::new(self.p, c)
    }

    pub fn scale(&self, s: &PadicScalar) -> ScalarPoly {
        Self::new(self.p, self.c.iter().map(|a| a * s).collect())
    }

    pub fn derivative(&self) -> ScalarPoly {
        Self::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul_q(&Q::from_integer((i as i64).into())))
                .collect(),
        )
    }

    /// `max_k (e*k - v(c_k))` over `k` in `from..`, with the attaining indices;
    /// `None` if all those coefficients vanish.
    pub fn newton_max(&self, e: &QExp, from: usize) -> Option<(QExp, Vec<usize>)> {
        let mut best: Option<(QExp, Vec<usize>)> = None;
        for (k, a) in self.c.iter().enumerate().skip(from) {
            let v = match a.valuation() {
                Valuation::Finite(v) => v,
                Valuation::Infinity => continue,
            };
            let t = e.scale(&Q::from_integer((k as i64).into())).add_q(&-v);
            best = match best {
                None => Some((t, vec![k])),
                Some((b, mut ks)) => match t.q.cmp(&b.q) {
                    std::cmp::Ordering::Greater => Some((t, vec![k])),
                    std::cmp::Ordering::Equal => {
                        ks.push(k);
                        Some((b.max(&t), ks))
                    }
                    std::cmp::Ordering::Less => Some((b, ks)),
                },
            };
        }
        best
    }
}
