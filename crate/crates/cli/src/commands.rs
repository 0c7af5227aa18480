//! One function per subcommand, each producing the `result` object of a report.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use padyn::map::{
    discriminant_delta, fixed_points, image_ball, lefschetz_sum, linearize, preimage_cells, reduce_map,
    residual_cycles, tree_action, Certificate,
};
use padyn::padic::{fmt_q, PadicScalar, Point, Q};
use padyn::symbolic::{
    cantor_test, orbit, periodic_code_ball, sigma_level, CantorVerdict, Code, SigmaOptions, SigmaTree,
};
use padyn::tree::{chordal_dist, join, median, tree_dist, Ball, TreePoint};

use crate::dot::sigma_dot;
use crate::spec_file::MapSpecFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Reduce,
    Delta,
    BallImage,
    TreeDist,
    TreeAction,
    Preimages,
    FixedPoints,
    Lefschetz,
    Linearize,
    ResidualCycles,
    Sigma,
    Cantor,
    CodeBall,
    Orbit,
    Dot,
}

impl Command {
    pub const ALL: [Command; 15] = [
        Command::Reduce,
        Command::Delta,
        Command::BallImage,
        Command::TreeDist,
        Command::TreeAction,
        Command::Preimages,
        Command::FixedPoints,
        Command::Lefschetz,
        Command::Linearize,
        Command::ResidualCycles,
        Command::Sigma,
        Command::Cantor,
        Command::CodeBall,
        Command::Orbit,
        Command::Dot,
    ];

    pub fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

/// Parameters after merging command-line flags over the input file.
#[derive(Clone, Debug)]
pub struct Params {
    pub depth: Option<usize>,
    pub k_max: Option<u32>,
    pub period_max: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

pub enum Failure {
    /// Bad input: exit code 2.
    Parse(String),
    /// The library refused the configuration: exit code 3.
    Unsupported(padyn::Error),
}

impl From<padyn::Error> for Failure {
    fn from(e: padyn::Error) -> Self {
        match e {
            padyn::Error::InvalidPrime(_) => Failure::Parse(e.to_string()),
            e => Failure::Unsupported(e),
        }
    }
}

pub struct Outcome {
    pub result: Value,
    pub certificate: Option<String>,
    /// Some certificate is incomplete or inconclusive: exit code 4.
    pub incomplete: bool,
    pub dot: Option<String>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Outcome { result, certificate: None, incomplete: false, dot: None }
    }
}

type Run = Result<Outcome, Failure>;

fn ball_json(b: &Ball) -> Value {
    json!({
        "ball": b.to_string(),
        "center": b.center.to_string(),
        "exponent": b.exponent.to_string(),
        "closed": b.closure == padyn::tree::Closure::Closed,
    })
}

fn need<T: Clone>(v: &Option<T>, what: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| Failure::Parse(format!("input file needs \"{what}\"")))
}

fn target_ball(file: &MapSpecFile) -> Result<Ball, Failure> {
    match &file.ball {
        Some(b) => b.ball(file.prime()).map_err(Failure::Parse),
        None => Ok(Ball::unit(file.prime())),
    }
}

fn points(file: &MapSpecFile) -> Result<Vec<TreePoint>, Failure> {
    need(&file.points, "points")?.iter().map(|s| s.point(file.prime()).map_err(Failure::Parse)).collect()
}

fn options(file: &MapSpecFile) -> SigmaOptions {
    SigmaOptions { waive_normalization: file.waive_normalization, ..SigmaOptions::default() }
}

pub fn run(cmd: Command, file: &MapSpecFile, params: &Params) -> Run {
    let r = file.map()?;
    let p = r.prime();
    match cmd {
        Command::Reduce => {
            let red = reduce_map(&r);
            Ok(Outcome::plain(json!({
                "map": r.to_string(),
                "reduction": red.to_string(),
                "degree": red.degree,
                "source_degree": red.source_degree,
                "good_reduction": red.good_reduction,
                "inseparable": red.inseparable,
                "constant_infinity": red.constant_infinity,
            })))
        }
        Command::Delta => {
            let v = discriminant_delta(&r);
            Ok(Outcome::plain(json!({
                "map": r.to_string(),
                "delta_valuation": v.to_string(),
                "good_reduction": v == padyn::Valuation::from_int(0),
            })))
        }
        Command::BallImage => {
            let f = r.scalar_polynomial().ok_or_else(|| Failure::Unsupported(padyn::Error::UnsupportedPoleConfiguration))?;
            let b = target_ball(file)?;
            let img = image_ball(&f, &b)?;
            let samples = params.samples.unwrap_or(0);
            let seed = params.seed.unwrap_or(0);
            let outside = sample_outside(&f, &b, &img.image, samples, seed);
            Ok(Outcome::plain(json!({
                "source": ball_json(&b),
                "image": ball_json(&img.image),
                "local_degree": img.local_degree,
                "attaining": img.attaining,
                "samples": samples,
                "seed": seed,
                "samples_outside_image": outside,
            })))
        }
        Command::TreeDist => {
            let pts = points(file)?;
            if pts.len() < 2 {
                return Err(Failure::Parse("tree-dist needs at least two points".into()));
            }
            let mut out = json!({
                "points": pts.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            });
            let (a, b) = (&pts[0], &pts[1]);
            if a.is_cut() && b.is_cut() {
                out["distance"] = json!(tree_dist(a, b)?.to_string());
                out["join"] = json!(join(a, b)?.to_string());
            } else if let (TreePoint::Classical(z), TreePoint::Classical(w)) = (a, b) {
                out["chordal_valuation"] = json!(chordal_dist(z, w).to_string());
            } else {
                out["join"] = json!(join(a, b)?.to_string());
            }
            if pts.len() >= 3 {
                out["median"] = json!(median(&pts[0], &pts[1], &pts[2])?.to_string());
            }
            Ok(Outcome::plain(out))
        }
        Command::TreeAction => {
            let pts = points(file)?;
            let mut images = Vec::new();
            for x in &pts {
                let a = tree_action(&r, x)?;
                images.push(json!({"source": x.to_string(), "image": a.point.to_string(), "degree": a.degree}));
            }
            Ok(Outcome::plain(json!({ "map": r.to_string(), "actions": images })))
        }
        Command::Preimages => {
            let f = r.scalar_polynomial().ok_or_else(|| Failure::Unsupported(padyn::Error::UnsupportedPoleConfiguration))?;
            let b = target_ball(file)?;
            let res = preimage_cells(&f, &b);
            let cells: Vec<Value> = res
                .cells
                .iter()
                .map(|c| {
                    let mut v = ball_json(&c.ball);
                    v["degree"] = json!(c.degree);
                    v
                })
                .collect();
            Ok(certified(json!({ "target": ball_json(&b), "cells": cells }), &res.certificate))
        }
        Command::FixedPoints => {
            let fp = fixed_points(&r)?;
            let records: Vec<Value> = fp
                .records
                .iter()
                .map(|x| {
                    json!({
                        "location": x.location.to_string(),
                        "multiplicity": x.multiplicity,
                        "multiplier": x.multiplier.to_string(),
                        "multiplier_valuation": x.multiplier_valuation.to_string(),
                        "class": x.class.to_string(),
                    })
                })
                .collect();
            let unresolved: Vec<Value> = fp
                .unresolved
                .iter()
                .map(|u| json!({"valuation": u.valuation.to_string(), "count": u.count}))
                .collect();
            Ok(Outcome {
                result: json!({ "map": r.to_string(), "fixed_points": records, "unresolved": unresolved }),
                certificate: Some(if fp.search_complete { "COMPLETE" } else { "INCOMPLETE" }.into()),
                incomplete: !fp.search_complete,
                dot: None,
            })
        }
        Command::Lefschetz => {
            let s = lefschetz_sum(&r)?;
            Ok(Outcome::plain(json!({ "map": r.to_string(), "sum_one_over_one_minus_multiplier": fmt_q(&s) })))
        }
        Command::Linearize => {
            let f = r.as_polynomial().ok_or_else(|| Failure::Unsupported(padyn::Error::InvalidMap("expected a polynomial".into())))?;
            let n = file.order.unwrap_or(5);
            let l = linearize(&f, n, p as u64)?;
            Ok(Outcome::plain(json!({
                "lambda": fmt_q(&l.lambda),
                "order": n,
                "coefficients": l.coeffs.iter().map(fmt_q).collect::<Vec<_>>(),
                "valuations": l.valuations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })))
        }
        Command::ResidualCycles => {
            let k = params.k_max.unwrap_or(1);
            let t = params.period_max.unwrap_or(3);
            let cycles = residual_cycles(&r, k, t)?;
            let list: Vec<Value> = cycles
                .iter()
                .map(|c| {
                    json!({
                        "field_degree": c.field_degree,
                        "points": c.points.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "period": c.period,
                        "multiplier": c.multiplier,
                        "class": c.class.to_string(),
                    })
                })
                .collect();
            let attracting = cycles.iter().filter(|c| c.class == padyn::map::LiftClass::AttractingLift).count();
            Ok(Outcome::plain(json!({
                "reduction": reduce_map(&r).to_string(),
                "k_max": k,
                "period_max": t,
                "cycles": list,
                "attracting_cycles": attracting,
            })))
        }
        Command::Sigma | Command::Dot => {
            let depth = params.depth.unwrap_or(2);
            let tree = sigma_level(&r, depth, &options(file))?;
            let dot = sigma_dot(Some(&tree));
            let complete = tree.is_complete();
            let cert = if complete { "COMPLETE" } else { "INCOMPLETE" };
            let result = if cmd == Command::Sigma { sigma_json(&tree) } else { json!({ "dot": dot }) };
            Ok(Outcome { result, certificate: Some(cert.into()), incomplete: !complete, dot: Some(dot) })
        }
        Command::Cantor => {
            let depth = params.depth.unwrap_or(3);
            let v = cantor_test(&r, depth, &options(file))?;
            let inconclusive = matches!(v, CantorVerdict::Inconclusive(_));
            Ok(Outcome {
                result: json!({ "verdict": v.to_string(), "depth": depth }),
                certificate: Some(v.to_string()),
                incomplete: inconclusive,
                dot: None,
            })
        }
        Command::CodeBall => {
            let code = Code::periodic(file.code.clone().unwrap_or_else(|| vec![0]));
            let pb = periodic_code_ball(&r, &code)?;
            Ok(Outcome {
                result: json!({
                    "code": code.to_string(),
                    "limit": pb.limit.to_string(),
                    "exponent": pb.exponent.map(|e| e.to_string()),
                    "d": pb.d,
                    "chain": pb.chain.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                }),
                certificate: Some(pb.status.to_string()),
                incomplete: pb.status == padyn::symbolic::CodeStatus::Unknown,
                dot: None,
            })
        }
        Command::Orbit => {
            let z = PadicScalar::from_q(p, need(&file.z, "z")?.value().map_err(Failure::Parse)?);
            let n = params.depth.unwrap_or(10);
            let t = orbit(&r, &z, n)?;
            Ok(Outcome::plain(json!({
                "iterates": t.iterates.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "absolute_value_exponents": t.iterates.iter().map(|x| neg_val(x)).collect::<Vec<_>>(),
                "escaped": t.escaped,
                "escape_time": t.escape_time,
                "word": t.word,
            })))
        }
    }
}

/// `-v(x)`, so that `|x| = p^(result)`.
fn neg_val(x: &PadicScalar) -> String {
    match x.valuation() {
        padyn::Valuation::Finite(v) => fmt_q(&-v),
        padyn::Valuation::Infinity => "-inf".into(),
    }
}

fn certified(result: Value, cert: &Certificate) -> Outcome {
    let mut result = result;
    if let Certificate::Incomplete { found, expected } = cert {
        result["degree_found"] = json!(found);
        result["degree_expected"] = json!(expected);
    }
    Outcome { result, certificate: Some(cert.to_string()), incomplete: !cert.is_complete(), dot: None }
}

fn sigma_json(tree: &SigmaTree) -> Value {
    let levels: Vec<Value> = (0..=tree.depth())
        .map(|n| {
            let cells: Vec<Value> = tree
                .level(n)
                .map(|c| {
                    json!({
                        "id": c.id,
                        "label": c.label,
                        "center": c.ball.center.to_string(),
                        "exponent": c.ball.exponent.to_string(),
                        "degree": c.local_degree,
                        "parent": c.parent,
                        "image": c.image,
                        "word": c.word,
                    })
                })
                .collect();
            json!({ "depth": n, "certificate": tree.certificates[n].to_string(), "count": cells.len(), "cells": cells })
        })
        .collect();
    json!({ "levels": levels })
}

/// Counts seeded random rational points of `b` whose image leaves `image`.
fn sample_outside(f: &padyn::poly::ScalarPoly, b: &Ball, image: &Ball, n: usize, seed: u64) -> usize {
    let p = f.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = -&b.exponent.q;
    // smallest integer k with k >= -e, or > -e for open balls
    let mut k = e.ceil().to_integer();
    if b.closure == padyn::tree::Closure::Open && Q::from_integer(k.clone()) == e {
        k += 1;
    }
    let scale = if k >= BigInt::zero() {
        Q::from_integer(BigInt::from(p).pow(k.try_into().unwrap_or(0u32)))
    } else {
        Q::one() / Q::from_integer(BigInt::from(p).pow((-k).try_into().unwrap_or(0u32)))
    };
    let mut outside = 0;
    for _ in 0..n {
        let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let mut den: i64 = rng.gen_range(1..=1_000_000);
        while den % p as i64 == 0 {
            den += 1;
        }
        let t = Q::new(num.into(), den.into()) * &scale;
        let z = &b.center + &PadicScalar::from_q(p, t);
        if !image.contains(&Point::Finite(f.eval(&z))) {
            outside += 1;
        }
    }
    outside
}
