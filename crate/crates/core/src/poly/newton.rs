use crate::padic::{q_int, Valuation, Q};

/// A maximal edge of the lower convex hull. Its `end - start` roots all have
/// valuation `root_valuation` (the negated slope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub root_valuation: Q,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Roots at zero: the number of leading vanishing coefficients.
    pub zero_roots: usize,
    /// Left to right, so root valuations decrease.
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn root_valuations(&self) -> Vec<(Valuation, usize)> {
        let mut out = Vec::new();
        if self.zero_roots > 0 {
            out.push((Valuation::Infinity, self.zero_roots));
        }
        out.extend(self.segments.iter().map(|s| (Valuation::Finite(s.root_valuation.clone()), s.len())));
        out
    }
}

fn slope(a: &(usize, Q), b: &(usize, Q)) -> Q {
    (&b.1 - &a.1) / q_int(b.0 as i64 - a.0 as i64)
}

/// Newton polygon from the coefficient valuations `v(c_k)`, `k = 0..`.
pub fn newton_polygon(vals: &[Valuation]) -> NewtonPolygon {
    let pts: Vec<(usize, Q)> = vals
        .iter()
        .enumerate()
        .filter_map(|(k, v)| v.finite().map(|v| (k, v.clone())))
        .collect();
    let zero_roots = pts.first().map(|p| p.0).unwrap_or(0);
    let mut hull: Vec<(usize, Q)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let n = hull.len();
            if slope(&hull[n - 2], &hull[n - 1]) >= slope(&hull[n - 1], &pt) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| Segment { start: w[0].0, end: w[1].0, root_valuation: -slope(&w[0], &w[1]) })
        .collect();
    NewtonPolygon { zero_roots, segments }
}
