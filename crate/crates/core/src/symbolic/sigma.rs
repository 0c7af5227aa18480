use num_traits::Zero;

use crate::error::{Error, Result};
use crate::map::{preimage_cells_with, Certificate, RationalMapSpec, DEFAULT_SEARCH_STEPS};
use crate::padic::{valuation_q, Valuation, Q};
use crate::poly::{newton_polygon, QPoly, ScalarPoly};
use crate::tree::{ball_relation, Ball, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCell {
    pub id: usize,
    pub depth: usize,
    pub ball: Ball,
    /// Degree of the map from this cell onto its image.
    pub local_degree: usize,
    /// The cell one level up containing this one.
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Index among the siblings, in canonical center order.
    pub label: usize,
    /// The cell one level up that this one maps onto.
    pub image: Option<usize>,
    /// Labels of the depth-1 cells visited by the first `depth` iterates.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SigmaOptions {
    /// Build the tree even if the polynomial is not normalized.
    pub waive_normalization: bool,
    pub max_steps: usize,
}

impl Default for SigmaOptions {
    fn default() -> Self {
        SigmaOptions { waive_normalization: false, max_steps: DEFAULT_SEARCH_STEPS }
    }
}

#[derive(Clone, Debug)]
pub struct SigmaTree {
    pub poly: ScalarPoly,
    pub cells: Vec<SigmaCell>,
    /// Cell ids per depth; depth 0 is the unit ball.
    pub levels: Vec<Vec<usize>>,
    /// Certificate of each depth `1..=n`; entry 0 is always complete.
    pub certificates: Vec<Certificate>,
}

impl SigmaTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> impl Iterator<Item = &SigmaCell> {
        self.levels[n].iter().map(|&i| &self.cells[i])
    }

    pub fn is_complete(&self) -> bool {
        self.certificates.iter().all(Certificate::is_complete)
    }

    /// The depth-`n` cell with the given itinerary word.
    pub fn cell_by_word(&self, word: &[usize]) -> Result<Option<&SigmaCell>> {
        let mut hits = self.level(word.len()).filter(|c| c.word == word);
        let first = hits.next();
        if hits.next().is_some() {
            return Err(Error::AmbiguousCode);
        }
        Ok(first)
    }
}

fn polynomial(r: &RationalMapSpec) -> Result<QPoly> {
    let f = r.as_polynomial().ok_or_else(|| Error::InvalidMap("expected a polynomial".into()))?;
    if f.degree().is_none_or(|d| d < 2) {
        return Err(Error::InvalidMap("degree must be at least 2".into()));
    }
    Ok(f)
}

/// Checks `|a_d| > 1` and that the largest fixed point has absolute value 1.
pub fn check_normalization(r: &RationalMapSpec) -> Result<()> {
    let f = polynomial(r)?;
    let p = r.prime();
    if valuation_q(&f.lead(), p) >= Valuation::Finite(Q::zero()) {
        return Err(Error::UnsupportedNormalization("leading coefficient has |a_d| <= 1".into()));
    }
    let g = f.sub(&QPoly::x());
    let vals: Vec<Valuation> = g.coeffs().iter().map(|a| valuation_q(a, p)).collect();
    let smallest = newton_polygon(&vals).segments.last().map(|s| s.root_valuation.clone());
    if smallest != Some(Q::zero()) {
        return Err(Error::UnsupportedNormalization("fixed points do not reach |z| = 1".into()));
    }
    Ok(())
}

/// Levels `0..=depth` of the preimage tree of the closed unit ball.
pub fn sigma_level(r: &RationalMapSpec, depth: usize, opts: &SigmaOptions) -> Result<SigmaTree> {
    let f = polynomial(r)?;
    if !opts.waive_normalization {
        check_normalization(r)?;
    }
    let p = r.prime();
    let poly = ScalarPoly::from_qpoly(p, &f);
    let root = SigmaCell {
        id: 0,
        depth: 0,
        ball: Ball::unit(p),
        local_degree: f.degree().unwrap(),
        parent: None,
        children: Vec::new(),
        label: 0,
        image: None,
        word: Vec::new(),
    };
    let mut tree = SigmaTree { poly, cells: vec![root], levels: vec![vec![0]], certificates: vec![Certificate::Complete] };
    for n in 1..=depth {
        let mut found = 0;
        let mut expected = 0;
        let mut complete = true;
        let mut fresh: Vec<SigmaCell> = Vec::new();
        for &t in &tree.levels[n - 1] {
            let res = preimage_cells_with(&tree.poly, &tree.cells[t].ball, opts.max_steps);
            match res.certificate {
                Certificate::Complete => {
                    let d = tree.poly.degree().unwrap();
                    found += d;
                    expected += d;
                }
                Certificate::Incomplete { found: a, expected: b } => {
                    complete = false;
                    found += a;
                    expected += b;
                }
            }
            for c in res.cells {
                let parent = tree.levels[n - 1]
                    .iter()
                    .copied()
                    .find(|&q| {
                        matches!(
                            ball_relation(&c.ball, &tree.cells[q].ball),
                            Relation::FirstInsideSecond | Relation::Equal
                        )
                    })
                    .ok_or_else(|| {
                        Error::UnsupportedNormalization(format!("preimage {} leaves the level above", c.ball))
                    })?;
                fresh.push(SigmaCell {
                    id: 0,
                    depth: n,
                    ball: c.ball,
                    local_degree: c.degree,
                    parent: Some(parent),
                    children: Vec::new(),
                    label: 0,
                    image: Some(t),
                    word: Vec::new(),
                });
            }
        }
        // siblings ordered by canonical center, levels ordered by parent then label
        let position = |id: usize, lvl: &[usize]| lvl.iter().position(|&x| x == id).unwrap();
        let prev = tree.levels[n - 1].clone();
        fresh.sort_by(|a, b| {
            let pa = position(a.parent.unwrap(), &prev);
            let pb = position(b.parent.unwrap(), &prev);
            pa.cmp(&pb).then_with(|| a.ball.canonical_key().cmp(&b.ball.canonical_key()))
        });
        let mut ids = Vec::new();
        for mut c in fresh {
            let id = tree.cells.len();
            let parent = c.parent.unwrap();
            c.id = id;
            c.label = tree.cells[parent].children.len();
            tree.cells[parent].children.push(id);
            c.word = if n == 1 {
                vec![c.label]
            } else {
                let head = tree.cells[parent].word[0];
                let mut w = vec![head];
                w.extend_from_slice(&tree.cells[c.image.unwrap()].word);
                w
            };
            tree.cells.push(c);
            ids.push(id);
        }
        tree.levels.push(ids);
        tree.certificates.push(if complete { Certificate::Complete } else { Certificate::Incomplete { found, expected } });
    }
    Ok(tree)
}
