use super::reduction::{ff_eval, reduce_map, ResidualMap};
use super::spec::RationalMapSpec;
use crate::error::{Error, Result};
use crate::padic::{FiniteField, Residue};
use crate::poly::fp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftClass {
    /// The residue classes contain a unique attracting cycle.
    AttractingLift,
    /// The residue classes lie in the quasi-periodicity domain.
    IndifferentLift,
}

impl std::fmt::Display for LiftClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LiftClass::AttractingLift => "ATTRACTING_LIFT",
            LiftClass::IndifferentLift => "INDIFFERENT_LIFT",
        })
    }
}

/// A cycle of the residual map on `P^1(F_{p^k})` not defined over a smaller field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualCycle {
    pub field_degree: u32,
    /// Starts at the smallest point of the cycle.
    pub points: Vec<Residue>,
    pub period: usize,
    /// Multiplier of the cycle as an element of `F_{p^k}`.
    pub multiplier: u32,
    pub class: LiftClass,
}

fn padded_reverse(c: &[u32], deg: usize) -> Vec<u32> {
    let mut v = c.to_vec();
    v.resize(deg + 1, 0);
    v.reverse();
    fp::trim(v)
}

/// Derivative at `x` of the residual map in the charts `z` or `1/z`
/// around `x` and its image.
fn local_derivative(field: &FiniteField, r: &ResidualMap, x: Residue) -> u32 {
    let (n, d, t) = match x {
        Residue::Finite(t) => (r.num.clone(), r.den.clone(), t),
        Residue::Infinity => (padded_reverse(&r.num, r.degree), padded_reverse(&r.den, r.degree), 0),
    };
    let a = fp::eval(field, &n, t);
    let b = fp::eval(field, &d, t);
    let da = fp::eval(field, &fp::derivative(field, &n), t);
    let db = fp::eval(field, &fp::derivative(field, &d), t);
    if b != 0 {
        let w = field.sub(field.mul(da, b), field.mul(a, db));
        field.mul(w, field.inv(field.mul(b, b)).unwrap())
    } else {
        // the image is infinity: differentiate d/n instead
        field.mul(db, field.inv(a).unwrap())
    }
}

fn in_proper_subfield(field: &FiniteField, points: &[Residue]) -> bool {
    let k = field.degree();
    (1..k).filter(|j| k % j == 0).any(|j| {
        points.iter().all(|x| match x {
            Residue::Finite(a) => field.in_subfield(*a, j),
            Residue::Infinity => true,
        })
    })
}

/// Cycles of the residual map over `F_{p^k}`, `k <= k_max`, of period at most
/// `period_max`, each reported over the smallest field containing it.
pub fn residual_cycles(r: &RationalMapSpec, k_max: u32, period_max: usize) -> Result<Vec<ResidualCycle>> {
    let red = reduce_map(r);
    if red.degree == 0 {
        return Err(Error::RequiresGoodReduction);
    }
    let p = r.prime();
    let mut out = Vec::new();
    for k in 1..=k_max {
        let field = FiniteField::new(p, k)?;
        let q = field.order() as usize;
        let index = |x: Residue| match x {
            Residue::Finite(a) => a as usize,
            Residue::Infinity => q,
        };
        let point = |i: usize| if i == q { Residue::Infinity } else { Residue::Finite(i as u32) };
        let next: Vec<usize> = (0..=q)
            .map(|i| ff_eval(&field, &red, point(i)).map(index))
            .collect::<Result<_>>()?;
        // 0 = unseen, 1 = on the current path, 2 = done
        let mut state = vec![0u8; q + 1];
        for start in 0..=q {
            let mut path = Vec::new();
            let mut x = start;
            while state[x] == 0 {
                state[x] = 1;
                path.push(x);
                x = next[x];
            }
            if state[x] == 1 {
                let pos = path.iter().position(|&y| y == x).unwrap();
                let cycle = &path[pos..];
                let m = cycle.iter().enumerate().min_by_key(|(_, &y)| y).unwrap().0;
                let points: Vec<Residue> = cycle[m..].iter().chain(&cycle[..m]).map(|&i| point(i)).collect();
                if cycle.len() <= period_max && !in_proper_subfield(&field, &points) {
                    let multiplier = points
                        .iter()
                        .fold(1, |acc, &x| field.mul(acc, local_derivative(&field, &red, x)));
                    let class = if multiplier == 0 { LiftClass::AttractingLift } else { LiftClass::IndifferentLift };
                    out.push(ResidualCycle { field_degree: k, period: points.len(), points, multiplier, class });
                }
            }
            for &y in &path {
                state[y] = 2;
            }
        }
    }
    out.sort_by(|a, b| (a.field_degree, a.period, &a.points).cmp(&(b.field_degree, b.period, &b.points)));
    Ok(out)
}
