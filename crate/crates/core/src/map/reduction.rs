use std::fmt;

use num_traits::Zero;

use super::spec::RationalMapSpec;
use crate::error::{Error, Result};
use crate::padic::{reduce_rational, valuation_q, FiniteField, Residue, Valuation};
use crate::poly::{fp, resultant_homogeneous};

/// The reduction `R-bar` of a normalized map, as a pair of coprime binary
/// forms of degree `degree` over `F_p`, dehomogenized (lowest degree first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualMap {
    pub p: u32,
    pub num: Vec<u32>,
    pub den: Vec<u32>,
    /// Degree after cancelling the common factor of the reduced forms.
    pub degree: usize,
    /// Degree of the map before reduction.
    pub source_degree: usize,
    pub constant_infinity: bool,
    pub good_reduction: bool,
    pub inseparable: bool,
}

/// Coefficient-wise reduction, followed by cancellation of the common factor
/// of the two forms (including a common power of `y`).
pub fn reduce_map(r: &RationalMapSpec) -> ResidualMap {
    let p = r.prime();
    let d = r.degree();
    let field = FiniteField::new(p, 1).expect("prime field");
    let (a, b) = r.homogeneous();
    let red = |c: &[crate::padic::Q]| -> Vec<u32> {
        fp::trim(c.iter().map(|x| reduce_rational(x, p).expect("normalized coefficients are integral")).collect())
    };
    let (ra, rb) = (red(&a), red(&b));
    if rb.is_empty() {
        return ResidualMap {
            p,
            num: vec![1],
            den: Vec::new(),
            degree: 0,
            source_degree: d,
            constant_infinity: true,
            good_reduction: false,
            inseparable: false,
        };
    }
    if ra.is_empty() {
        return ResidualMap {
            p,
            num: Vec::new(),
            den: vec![1],
            degree: 0,
            source_degree: d,
            constant_infinity: false,
            good_reduction: false,
            inseparable: false,
        };
    }
    let ya = d - fp::degree(&ra).unwrap();
    let yb = d - fp::degree(&rb).unwrap();
    let g = fp::gcd(&field, &ra, &rb);
    let num = fp::divrem(&field, &ra, &g).0;
    let den = fp::divrem(&field, &rb, &g).0;
    let degree = d - fp::degree(&g).unwrap() - ya.min(yb);
    let wronskian = fp::sub(
        &field,
        &fp::mul(&field, &fp::derivative(&field, &num), &den),
        &fp::mul(&field, &num, &fp::derivative(&field, &den)),
    );
    ResidualMap {
        p,
        num,
        den,
        degree,
        source_degree: d,
        constant_infinity: false,
        good_reduction: degree == d,
        inseparable: degree >= 1 && wronskian.is_empty(),
    }
}

fn form_at(f: &FiniteField, c: &[u32], deg: usize, x: &Residue) -> u32 {
    match x {
        Residue::Finite(a) => fp::eval(f, c, *a),
        Residue::Infinity => c.get(deg).copied().unwrap_or(0),
    }
}

/// Evaluates the residual map at a point of `P^1(F_{p^k})` using the
/// homogeneous forms, so infinity needs no special casing.
pub fn ff_eval(field: &FiniteField, r: &ResidualMap, x: Residue) -> Result<Residue> {
    let a = form_at(field, &r.num, r.degree, &x);
    let b = form_at(field, &r.den, r.degree, &x);
    match (a, b) {
        (0, 0) => Err(Error::IndeterminateResidual),
        (_, 0) => Ok(Residue::Infinity),
        (a, b) => Ok(Residue::Finite(field.mul(a, field.inv(b).unwrap()))),
    }
}

/// Valuation of `Res(A, B)` for the normalized homogeneous pair; zero
/// exactly for good reduction.
pub fn discriminant_delta(r: &RationalMapSpec) -> Valuation {
    let (a, b) = r.homogeneous();
    let res = resultant_homogeneous(&a, &b, r.degree());
    if res.is_zero() {
        return Valuation::Infinity;
    }
    valuation_q(&res, r.prime())
}

fn fmt_fp(c: &[u32]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{i}"),
        };
        parts.push(match (a, i) {
            (_, 0) => a.to_string(),
            (1, _) => mono,
            _ => format!("{a}{mono}"),
        });
    }
    parts.join(" + ")
}

impl fmt::Display for ResidualMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constant_infinity {
            return write!(f, "inf");
        }
        if self.den == [1] {
            write!(f, "{}", fmt_fp(&self.num))
        } else {
            write!(f, "({}) / ({})", fmt_fp(&self.num), fmt_fp(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, q_int};
    use crate::poly::QPoly;

    fn poly(p: u64, c: Vec<crate::padic::Q>) -> RationalMapSpec {
        RationalMapSpec::polynomial(p, QPoly::new(c)).unwrap()
    }

    #[test]
    fn reduction_table() {
        let r = reduce_map(&poly(3, vec![q_int(4), q_int(0), q_int(1)]));
        assert_eq!(r.to_string(), "z^2 + 1");
        assert!(r.good_reduction && !r.inseparable);
        let r = reduce_map(&poly(3, vec![q_frac(1, 3), q_int(0), q_int(1)]));
        assert!(r.constant_infinity);
        let r = reduce_map(&poly(3, vec![q_frac(1, 3), q_int(3)]));
        assert!(r.constant_infinity);
        let r = reduce_map(&poly(3, vec![q_int(0), q_int(0), q_int(0), q_int(1)]));
        assert_eq!(r.to_string(), "z^3");
        assert!(r.good_reduction && r.inseparable);
    }

    #[test]
    fn degree_drop_with_common_factor() {
        // p^3 z^2 + z reduces to the identity
        let r = reduce_map(&poly(3, vec![q_int(0), q_int(1), q_int(27)]));
        assert_eq!(r.degree, 1);
        assert!(!r.good_reduction);
        assert_eq!(r.to_string(), "z");
    }

    #[test]
    fn ff_eval_examples() {
        let f = FiniteField::new(3, 1).unwrap();
        let cube = reduce_map(&poly(3, vec![q_int(0), q_int(0), q_int(0), q_int(1)]));
        assert_eq!(ff_eval(&f, &cube, Residue::Finite(2)).unwrap(), Residue::Finite(2));
        let sq = reduce_map(&poly(3, vec![q_int(0), q_int(0), q_int(1)]));
        assert_eq!(ff_eval(&f, &sq, Residue::Infinity).unwrap(), Residue::Infinity);
        let sq1 = reduce_map(&poly(3, vec![q_int(1), q_int(0), q_int(1)]));
        assert_eq!(ff_eval(&f, &sq1, Residue::Finite(1)).unwrap(), Residue::Finite(2));
        let bad = ResidualMap { num: vec![0, 1], den: vec![0, 1], ..sq1 };
        assert_eq!(ff_eval(&f, &bad, Residue::Finite(0)), Err(Error::IndeterminateResidual));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(discriminant_delta(&poly(3, vec![q_int(0), q_int(0), q_int(1)])), Valuation::from_int(0));
        assert_eq!(discriminant_delta(&poly(3, vec![q_int(5), q_int(0), q_int(1)])), Valuation::from_int(0));
        let bad = poly(3, vec![q_int(0), q_frac(1, 3), q_int(0), q_frac(-1, 3)]);
        assert!(discriminant_delta(&bad) > Valuation::from_int(0));
    }
}
