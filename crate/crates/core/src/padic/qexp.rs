use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{fmt_q, q_int, Q};

/// Exponent `q` of a radius `p^q`.
///
/// The `formally_irrational` flag marks type III data. It is carried through
/// arithmetic but never consulted by numeric comparisons, which use `q` alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QExp {
    pub q: Q,
    pub formally_irrational: bool,
}

impl QExp {
    pub fn new(q: Q) -> Self {
        QExp { q, formally_irrational: false }
    }

    pub fn flagged(q: Q) -> Self {
        QExp { q, formally_irrational: true }
    }

    pub fn int(n: i64) -> Self {
        QExp::new(q_int(n))
    }

    pub fn zero() -> Self {
        QExp::int(0)
    }

    pub fn add(&self, o: &QExp) -> QExp {
        QExp {
            q: &self.q + &o.q,
            formally_irrational: self.formally_irrational || o.formally_irrational,
        }
    }

    pub fn sub(&self, o: &QExp) -> QExp {
        QExp {
            q: &self.q - &o.q,
            formally_irrational: self.formally_irrational || o.formally_irrational,
        }
    }

    pub fn add_q(&self, o: &Q) -> QExp {
        QExp { q: &self.q + o, formally_irrational: self.formally_irrational }
    }

    pub fn scale(&self, s: &Q) -> QExp {
        // Scaling by zero erases the irrational part.
        QExp {
            q: &self.q * s,
            formally_irrational: self.formally_irrational && !s.is_zero(),
        }
    }

    pub fn neg(&self) -> QExp {
        QExp { q: -&self.q, formally_irrational: self.formally_irrational }
    }

    pub fn cmp_q(&self, o: &QExp) -> Ordering {
        self.q.cmp(&o.q)
    }

    pub fn max(&self, o: &QExp) -> QExp {
        match self.q.cmp(&o.q) {
            Ordering::Less => o.clone(),
            Ordering::Greater => self.clone(),
            Ordering::Equal => QExp {
                q: self.q.clone(),
                formally_irrational: self.formally_irrational && o.formally_irrational,
            },
        }
    }

    pub fn min(&self, o: &QExp) -> QExp {
        self.neg().max(&o.neg()).neg()
    }

    pub fn is_negative(&self) -> bool {
        self.q.is_negative()
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_q(&self.q))?;
        if self.formally_irrational {
            write!(f, "~")?;
        }
        Ok(())
    }
}

/// An exact valuation, `+inf` for zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Q),
    Infinity,
}

impl Valuation {
    pub fn from_int(n: i64) -> Self {
        Valuation::Finite(q_int(n))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Valuation::Finite(q) => Some(q),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn add(&self, o: &Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }

    pub fn add_q(&self, o: &Q) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a + o),
            Valuation::Infinity => Valuation::Infinity,
        }
    }

    /// `v >= -e`, i.e. `|x| <= p^e`.
    pub fn within(&self, e: &Q) -> bool {
        match self {
            Valuation::Infinity => true,
            Valuation::Finite(v) => v >= &-e,
        }
    }

    /// `v > -e`, i.e. `|x| < p^e`.
    pub fn strictly_within(&self, e: &Q) -> bool {
        match self {
            Valuation::Infinity => true,
            Valuation::Finite(v) => v > &-e,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(q) => write!(f, "{}", fmt_q(q)),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}
