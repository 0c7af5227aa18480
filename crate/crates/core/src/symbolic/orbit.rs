use super::code::{first_level, in_unit_ball, letter_of, polynomial_of};
use crate::error::Result;
use crate::map::RationalMapSpec;
use crate::padic::{PadicScalar, Valuation};
use crate::poly::ScalarPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTrace {
    /// `z, P(z), ...`; after an escape one further iterate is kept to show the growth.
    pub iterates: Vec<PadicScalar>,
    pub escaped: bool,
    /// Index of the first iterate past which the orbit provably tends to infinity.
    pub escape_time: Option<usize>,
    /// Depth-1 cell labels of the iterates while they stay in a cell.
    pub word: Vec<usize>,
}

/// Whether the leading term dominates at `z` and pushes it further out, so
/// that `|P(z)| = |a_d| |z|^d > |z|` for this and every later iterate.
fn dominated(f: &ScalarPoly, z: &PadicScalar) -> bool {
    let Valuation::Finite(vz) = z.valuation() else { return false };
    if vz >= num_traits::Zero::zero() {
        return false;
    }
    let vals = f.valuations();
    let d = vals.len() - 1;
    let at = |k: usize| vals[k].add_q(&(vz.clone() * crate::padic::q_int(k as i64)));
    let lead = at(d);
    (0..d).all(|k| at(k) > lead) && lead < Valuation::Finite(vz)
}

pub fn orbit(r: &RationalMapSpec, z: &PadicScalar, n_max: usize) -> Result<OrbitTrace> {
    let f = polynomial_of(r)?;
    let (cells, _) = first_level(&f);
    let mut trace = OrbitTrace { iterates: vec![z.clone()], escaped: false, escape_time: None, word: Vec::new() };
    let mut x = z.clone();
    let mut inside = true;
    for i in 0..=n_max {
        if inside && in_unit_ball(&x) {
            match letter_of(&cells, &x) {
                Some(a) => trace.word.push(a),
                None => inside = false,
            }
        } else {
            inside = false;
        }
        if trace.escape_time.is_none() && dominated(&f, &x) {
            trace.escaped = true;
            trace.escape_time = Some(i);
            if i < n_max {
                trace.iterates.push(f.eval(&x));
            }
            break;
        }
        if i == n_max {
            break;
        }
        x = f.eval(&x);
        trace.iterates.push(x.clone());
    }
    Ok(trace)
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
    fn bounded_and_escaping() {
        let t = orbit(&expanding(), &PadicScalar::from_int(3, 4), 10).unwrap();
        assert!(!t.escaped);
        assert_eq!((t.iterates.len(), t.word.len()), (11, 11));

        let t = orbit(&expanding(), &PadicScalar::from_q(3, q_frac(1, 3)), 10).unwrap();
        assert_eq!((t.escaped, t.escape_time), (true, Some(0)));
        assert_eq!(t.iterates[1], PadicScalar::from_q(3, q_frac(8, 81)));
        assert_eq!(t.iterates[1].valuation(), Valuation::from_int(-4));
        assert!(t.word.is_empty());

        let sq = RationalMapSpec::polynomial(3, QPoly::from_ints(&[0, 0, 1])).unwrap();
        let t = orbit(&sq, &PadicScalar::zero(3), 4).unwrap();
        assert!(t.iterates.iter().all(|z| z.is_zero()));
    }

    #[test]
    fn large_but_not_yet_escaping() {
        // z^2 + 1/9 at p=3: |z| = 3 is not enough for the leading term to win
        // at z = 1/3, since (1/3)^2 + 1/9 = 2/9 still has |.| = 9 > 3
        let f = RationalMapSpec::polynomial(3, QPoly::new(vec![q_frac(1, 9), q_int(0), q_int(1)])).unwrap();
        let t = orbit(&f, &PadicScalar::from_q(3, q_frac(1, 3)), 3).unwrap();
        assert_eq!(t.escape_time, Some(1));
    }
}
