//! The JSON input format: a map plus optional analysis parameters.

use serde::Deserialize;

use padyn::map::RationalMapSpec;
use padyn::padic::{parse_q, PadicScalar, Point, Q};
use padyn::poly::QPoly;
use padyn::tree::{Ball, TreePoint};
use padyn::QExp;

/// An exact rational: `"n"`, `"n/d"`, `["n", "d"]` or a JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Int(i64),
    Text(String),
    Pair([String; 2]),
}

impl Rational {
    pub fn value(&self) -> Result<Q, String> {
        match self {
            Rational::Int(n) => Ok(Q::from_integer((*n).into())),
            Rational::Text(s) => parse_q(s).ok_or_else(|| format!("not an exact rational: {s:?}")),
            Rational::Pair([n, d]) => {
                parse_q(&format!("{n}/{d}")).ok_or_else(|| format!("not an exact rational: [{n:?}, {d:?}]"))
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallSpec {
    pub center: Rational,
    /// The radius is `p^exponent`.
    pub exponent: Rational,
    #[serde(default)]
    pub open: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Cut(BallSpec),
    Classical {
        point: Rational,
    },
    Infinity {
        infinity: bool,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpecFile {
    pub p: u64,
    /// Numerator coefficients, constant term first.
    pub num: Vec<Rational>,
    /// Denominator coefficients; `[1]` when absent.
    #[serde(default)]
    pub den: Option<Vec<Rational>>,
    pub depth: Option<usize>,
    pub k_max: Option<u32>,
    pub period_max: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    /// Target or source ball for `ball-image` and `preimages`.
    pub ball: Option<BallSpec>,
    /// Points of the tree for `tree-dist` and `tree-action`.
    pub points: Option<Vec<PointSpec>>,
    /// Starting point for `orbit`.
    pub z: Option<Rational>,
    /// Period word for `code-ball`.
    pub code: Option<Vec<usize>>,
    /// Truncation order for `linearize`.
    pub order: Option<usize>,
    #[serde(default)]
    pub waive_normalization: bool,
}

fn poly(c: &[Rational]) -> Result<QPoly, String> {
    Ok(QPoly::new(c.iter().map(Rational::value).collect::<Result<_, _>>()?))
}

impl MapSpecFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn numerator(&self) -> Result<QPoly, String> {
        poly(&self.num)
    }

    pub fn denominator(&self) -> Result<QPoly, String> {
        match &self.den {
            Some(d) => poly(d),
            None => Ok(QPoly::constant(Q::from_integer(1.into()))),
        }
    }

    pub fn map(&self) -> Result<RationalMapSpec, padyn::Error> {
        let num = self.numerator().map_err(padyn::Error::InvalidMap)?;
        let den = self.denominator().map_err(padyn::Error::InvalidMap)?;
        RationalMapSpec::new(self.p, num, den)
    }

    pub fn prime(&self) -> u32 {
        self.p as u32
    }
}

impl BallSpec {
    pub fn ball(&self, p: u32) -> Result<Ball, String> {
        let c = PadicScalar::from_q(p, self.center.value()?);
        let e = QExp::new(self.exponent.value()?);
        Ok(if self.open { Ball::open(c, e) } else { Ball::closed(c, e) })
    }
}

impl PointSpec {
    pub fn point(&self, p: u32) -> Result<TreePoint, String> {
        match self {
            PointSpec::Cut(b) => {
                let b = b.ball(p)?;
                Ok(TreePoint::cut(b.center, b.exponent))
            }
            PointSpec::Classical { point } => Ok(TreePoint::classical(PadicScalar::from_q(p, point.value()?))),
            PointSpec::Infinity { .. } => Ok(TreePoint::Classical(Point::Infinity)),
        }
    }
}
