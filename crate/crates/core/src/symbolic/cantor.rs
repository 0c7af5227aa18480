use std::fmt;

use super::code::Code;
use super::periodic::periodic_code_ball;
use super::sigma::{sigma_level, SigmaOptions};
use crate::error::{Error, Result};
use crate::map::{is_simple_polynomial, RationalMapSpec, Simplicity};
use crate::padic::Q;
use super::code::CodeStatus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CantorVerdict {
    /// Every cell of depth `level` has degree 1 and `P` expands each of them
    /// by at least `p^c` onto its image.
    CantorHyperbolic { c: Q, level: usize },
    NotHyperbolic(String),
    Inconclusive(String),
}

impl fmt::Display for CantorVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CantorVerdict::CantorHyperbolic { c, level } => {
                write!(f, "CANTOR_HYPERBOLIC(c={}, n={level})", crate::padic::fmt_q(c))
            }
            CantorVerdict::NotHyperbolic(why) => write!(f, "NOT_HYPERBOLIC({why})"),
            CantorVerdict::Inconclusive(why) => write!(f, "INCONCLUSIVE({why})"),
        }
    }
}

pub fn cantor_test(r: &RationalMapSpec, n_max: usize, opts: &SigmaOptions) -> Result<CantorVerdict> {
    let f = r.as_polynomial().ok_or_else(|| Error::InvalidMap("expected a polynomial".into()))?;
    match is_simple_polynomial(r.prime() as u64, &f)? {
        Simplicity::Undecided => {}
        s => return Ok(CantorVerdict::NotHyperbolic(format!("simple: {s}"))),
    }
    let tree = sigma_level(r, n_max, opts)?;
    if !tree.is_complete() {
        return Ok(CantorVerdict::Inconclusive("incomplete level".into()));
    }
    for n in 1..=n_max {
        if tree.level(n).all(|c| c.local_degree == 1) {
            let c = tree
                .level(n)
                .map(|b| &tree.cells[b.image.unwrap()].ball.exponent.q - &b.ball.exponent.q)
                .min()
                .expect("nonempty level");
            if c > Q::from_integer(0.into()) {
                return Ok(CantorVerdict::CantorHyperbolic { c, level: n });
            }
            return Ok(CantorVerdict::Inconclusive(format!("no expansion at depth {n}")));
        }
    }
    // a fixed cell whose nested chain keeps a degree above 1 is a critical point of the limit
    for cell in tree.level(1).filter(|c| c.local_degree > 1) {
        let pb = periodic_code_ball(r, &Code::periodic(vec![cell.label]))?;
        if pb.d > 1 && pb.status == CodeStatus::RealizedBall {
            return Ok(CantorVerdict::NotHyperbolic(format!(
                "code ({})^inf nests down to a ball of exponent {} with degree {}",
                cell.label,
                pb.exponent.unwrap(),
                pb.d
            )));
        }
    }
    Ok(CantorVerdict::Inconclusive(format!("cells of degree > 1 persist to depth {n_max}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, q_int};
    use crate::poly::QPoly;

    #[test]
    fn verdicts() {
        let opts = SigmaOptions::default();
        let e = RationalMapSpec::polynomial(3, QPoly::new(vec![q_int(0), q_frac(1, 3), q_int(0), q_frac(-1, 3)])).unwrap();
        assert_eq!(cantor_test(&e, 3, &opts).unwrap(), CantorVerdict::CantorHyperbolic { c: q_int(1), level: 1 });
        let mut c = vec![q_int(0); 10];
        c[3] = q_frac(1, 3);
        c[9] = q_frac(-1, 3);
        let nonic = RationalMapSpec::polynomial(3, QPoly::new(c)).unwrap();
        assert!(matches!(cantor_test(&nonic, 2, &opts).unwrap(), CantorVerdict::NotHyperbolic(_)));
        let sq = RationalMapSpec::polynomial(3, QPoly::from_ints(&[0, 0, 1])).unwrap();
        assert!(matches!(cantor_test(&sq, 2, &opts).unwrap(), CantorVerdict::NotHyperbolic(s) if s.starts_with("simple")));
    }
}
