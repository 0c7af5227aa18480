use std::fmt;

use crate::error::{Error, Result};
use crate::map::{preimage_cells, Certificate, RationalMapSpec};
use crate::padic::{PadicScalar, Valuation};
use crate::poly::ScalarPoly;
use crate::tree::Ball;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeStatus {
    RealizedPoint,
    RealizedBall,
    /// Nested cells whose intersection appears to be empty.
    EmptyLimit,
    Unknown,
}

impl fmt::Display for CodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeStatus::RealizedPoint => "REALIZED_POINT",
            CodeStatus::RealizedBall => "REALIZED_BALL",
            CodeStatus::EmptyLimit => "EMPTY_LIMIT",
            CodeStatus::Unknown => "UNKNOWN",
        })
    }
}

/// A word over the labels of the depth-1 cells: `prefix` followed by
/// `period` repeated forever, or just `prefix` if `period` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    pub prefix: Vec<usize>,
    pub period: Vec<usize>,
    pub status: CodeStatus,
}

impl Code {
    pub fn finite(word: Vec<usize>) -> Self {
        Code { prefix: word, period: Vec::new(), status: CodeStatus::Unknown }
    }

    pub fn periodic(period: Vec<usize>) -> Self {
        Code { prefix: Vec::new(), period, status: CodeStatus::Unknown }
    }

    pub fn is_periodic(&self) -> bool {
        self.prefix.is_empty() && !self.period.is_empty()
    }

    /// Letter `i`, if the code is that long.
    pub fn letter(&self, i: usize) -> Option<usize> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[usize]| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(&self.prefix))?;
        if !self.period.is_empty() {
            if !self.prefix.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "({})^inf", join(&self.period))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodingWord {
    Word(Vec<usize>),
    /// The iterate with this index left the closed unit ball.
    Escaped(usize),
    /// The depth-1 cells are not all known and an iterate fell outside the
    /// known ones; the letters so far are kept.
    Undetermined(Vec<usize>),
}

impl fmt::Display for CodingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[usize]| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            CodingWord::Word(w) => write!(f, "[{}]", join(w)),
            CodingWord::Escaped(t) => write!(f, "ESCAPED({t})"),
            CodingWord::Undetermined(w) => write!(f, "UNDETERMINED[{}]", join(w)),
        }
    }
}

/// Depth-1 cells in label order, with the search certificate.
pub(crate) fn first_level(poly: &ScalarPoly) -> (Vec<Ball>, Certificate) {
    let res = preimage_cells(poly, &Ball::unit(poly.prime()));
    (res.cells.into_iter().map(|c| c.ball).collect(), res.certificate)
}

pub(crate) fn letter_of(cells: &[Ball], z: &PadicScalar) -> Option<usize> {
    cells.iter().position(|b| b.affine_contains(z))
}

pub(crate) fn in_unit_ball(z: &PadicScalar) -> bool {
    z.valuation() >= Valuation::from_int(0)
}

pub(crate) fn polynomial_of(r: &RationalMapSpec) -> Result<ScalarPoly> {
    r.scalar_polynomial().ok_or_else(|| Error::InvalidMap("expected a polynomial".into()))
}

/// The first `n` letters of the itinerary of `z` through the depth-1 cells.
pub fn coding_word(r: &RationalMapSpec, z: &PadicScalar, n: usize) -> Result<CodingWord> {
    let poly = polynomial_of(r)?;
    let (cells, cert) = first_level(&poly);
    let mut word = Vec::new();
    let mut x = z.clone();
    for i in 0..n {
        if !in_unit_ball(&x) {
            return Ok(CodingWord::Escaped(i));
        }
        match letter_of(&cells, &x) {
            Some(a) => word.push(a),
            None if cert.is_complete() => return Ok(CodingWord::Escaped(i + 1)),
            None => return Ok(CodingWord::Undetermined(word)),
        }
        if i + 1 < n {
            x = poly.eval(&x);
        }
    }
    Ok(CodingWord::Word(word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{q_frac, q_int};
    use crate::poly::QPoly;

    fn expanding() -> RationalMapSpec {
        RationalMapSpec::polynomial(3, QPoly::new(vec![q_int(0), q_frac(1, 3), q_int(0), q_frac(-1, 3)])).unwrap()
    }

    #[test]
    fn words() {
        let r = expanding();
        assert_eq!(coding_word(&r, &PadicScalar::from_int(3, 4), 2).unwrap(), CodingWord::Word(vec![1, 1]));
        assert_eq!(
            coding_word(&r, &PadicScalar::from_q(3, q_frac(1, 3)), 4).unwrap(),
            CodingWord::Escaped(0)
        );
        assert_eq!(coding_word(&r, &PadicScalar::zero(3), 5).unwrap(), CodingWord::Word(vec![0; 5]));
        // 1/2 is a 3-adic integer, so it never escapes
        assert!(matches!(coding_word(&r, &PadicScalar::from_q(3, q_frac(1, 2)), 6).unwrap(), CodingWord::Word(_)));
    }

    #[test]
    fn code_letters() {
        let c = Code { prefix: vec![2], period: vec![0, 1], status: CodeStatus::Unknown };
        assert_eq!((0..5).map(|i| c.letter(i).unwrap()).collect::<Vec<_>>(), vec![2, 0, 1, 0, 1]);
        assert_eq!(c.to_string(), "2,(0,1)^inf");
        assert_eq!(Code::finite(vec![1]).letter(1), None);
    }
}
