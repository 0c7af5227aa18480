use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{check_prime, q_int, valuation_q, Valuation, Q};
use crate::poly::QPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    GoodReduction,
    /// Conjugating by `z -> t + lambda z` with `v(lambda) = scale_valuation`
    /// gives good reduction.
    SimpleByScaling { scale_valuation: Q, translation: Q },
    Undecided,
}

impl std::fmt::Display for Simplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Simplicity::GoodReduction => write!(f, "GOOD_REDUCTION"),
            Simplicity::SimpleByScaling { scale_valuation, translation } => write!(
                f,
                "SIMPLE_BY_SCALING(v={}, t={})",
                crate::padic::fmt_q(scale_valuation),
                crate::padic::fmt_q(translation)
            ),
            Simplicity::Undecided => write!(f, "UNDECIDED"),
        }
    }
}

/// Exponent `s` such that scaling by `v(lambda) = s` gives good reduction, if any.
fn scaling(p: u32, f: &QPoly) -> Option<Q> {
    let d = f.degree()?;
    let vd = match valuation_q(&f.lead(), p) {
        Valuation::Finite(v) => v,
        Valuation::Infinity => return None,
    };
    let s = -vd.clone() / q_int(d as i64 - 1);
    let ok = f.coeffs().iter().enumerate().all(|(n, a)| match valuation_q(a, p) {
        Valuation::Infinity => true,
        Valuation::Finite(v) => v + q_int(n as i64 - 1) * &s >= Q::zero(),
    });
    ok.then_some(s)
}

/// Tests whether the polynomial is affinely conjugate to one with good
/// reduction. Only scalings and translations by rational fixed points are
/// searched, so a negative answer is `Undecided`.
pub fn is_simple_polynomial(p: u64, f: &QPoly) -> Result<Simplicity> {
    let p = check_prime(p)?;
    if f.degree().is_none_or(|d| d < 2) {
        return Err(Error::InvalidMap("simplicity needs degree at least 2".into()));
    }
    match scaling(p, f) {
        Some(s) if s.is_zero() => return Ok(Simplicity::GoodReduction),
        Some(s) => return Ok(Simplicity::SimpleByScaling { scale_valuation: s, translation: Q::zero() }),
        None => {}
    }
    let (roots, _) = f.sub(&QPoly::x()).rational_roots();
    for (t, _) in roots {
        let g = f.taylor_shift(&t).sub(&QPoly::constant(t.clone()));
        if let Some(s) = scaling(p, &g) {
            return Ok(Simplicity::SimpleByScaling { scale_valuation: s, translation: t });
        }
    }
    Ok(Simplicity::Undecided)
}
