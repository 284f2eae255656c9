//! Random filling curve systems, for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::arrangement::{intersection_count, to_stacked_diagram};
use super::complex::minimal_position;
use super::format::{parse_curve_file, CurveFile};
use super::geom::{q, ratio, Q};
use super::model::PlanarModel;
use super::plcurve::PlCurve;
use super::twist::twist_joint;
use super::CurveError;
use crate::diagram::StackedDiagram;

/// Genus-`g` model with a chain of `2g + 1` curves (two for the torus), each
/// meeting the next once: `m1 l1 n1 l2 ... n{g-1} l{g} m{g}`.
pub fn chain_file(genus: usize) -> CurveFile {
    assert!(genus >= 1, "genus must be positive");
    let mut t = String::from("plcurves v1\n");
    t += &format!("frame 0 -12 {} 12\n", 12 * genus + 16);
    for i in 0..genus {
        let x = 12 * i as i64;
        t += &format!("pair {} -1 {} 1 mirror x={}\n", 9 + x, 11 + x, 13 + x);
    }
    let m = |i: usize| {
        let x = 12 * i as i64;
        format!("curve m{}: {} -2; {} -2; {} 2; {} 2\n", i + 1, 8 + x, 12 + x, 12 + x, 8 + x)
    };
    let l = |i: usize| {
        let x = 12 * i as i64;
        format!("curve l{}: {} 0; {} 0 jump\n", i + 1, 15 + x, 11 + x)
    };
    t += &m(0);
    t += &l(0);
    for i in 1..genus {
        let x = 12 * (i - 1) as i64;
        t += &format!("curve n{i}: {} -4; {}/2 -4; {}/2 4; {} 4\n", 14 + x, 51 + 2 * x, 51 + 2 * x, 14 + x);
        t += &l(i);
    }
    if genus > 1 {
        t += &m(genus - 1);
    }
    parse_curve_file(&t).expect("generated chain parses")
}

/// A random system and its diagram, with a random salient designation.
#[derive(Clone, Debug)]
pub struct Sample {
    pub model: PlanarModel,
    pub curves: Vec<PlCurve>,
    pub diagram: StackedDiagram,
}

/// `k >= 2` curves built from chain curves by random twists, in minimal
/// position, filling, with consecutive curves (cyclically) meeting.
/// Gives up after `tries` rejected draws.
pub fn random_system<R: Rng>(genus: usize, k: usize, rng: &mut R, tries: usize) -> Result<Sample, CurveError> {
    let base = chain_file(genus);
    let chain = &base.curves;
    let mut last = CurveError::NotFilling { model: genus, diagram: 0 };
    for _ in 0..tries {
        match draw(&base.model, chain, k, rng) {
            Ok(s) => return Ok(s),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn draw<R: Rng>(model: &PlanarModel, chain: &[PlCurve], k: usize, rng: &mut R) -> Result<Sample, CurveError> {
    let n = chain.len();
    let sign = |rng: &mut R| if rng.gen_bool(0.5) { 1 } else { -1 };
    // Curve i picks up chain[run] by twisting a pushed-off chain[run.start]
    // about the rest of the run; no twist centre ever overlaps it.
    let build = |i: usize, run: std::ops::Range<usize>, rng: &mut R| -> Result<PlCurve, CurveError> {
        let mut c = chain[run.start].offset(&(ratio(1, 8) / q(i as i64 + 2)));
        for j in run.start + 1..run.end {
            c = twist_joint(model, &chain[j], std::slice::from_ref(&c), &[], sign(rng))?.remove(0);
        }
        for _ in 0..rng.gen_range(0..=1) {
            let centre = chain.choose(rng).expect("nonempty chain");
            c = twist_joint(model, centre, std::slice::from_ref(&c), &[], sign(rng))?.remove(0);
        }
        c.name = format!("c{}", i + 1);
        Ok(c)
    };
    // One curve sweeping the whole chain, then runs of the chain in order.
    let mut runs = vec![0..n];
    let parts = (k - 1).min(n);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, parts - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort();
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        runs.push(start..c);
        start = c;
    }
    while runs.len() < k {
        let j = rng.gen_range(0..n);
        let at = rng.gen_range(1..=runs.len());
        runs.insert(at, j..j + 1);
    }
    let mut curves = Vec::with_capacity(k);
    for (i, run) in runs.into_iter().enumerate() {
        curves.push(build(i, run, rng)?);
    }
    // Distinct small push-offs put copies of shared pieces in general position.
    let eps = min_gap(model, &curves) / q(4 * (k as i64 + 1));
    for (i, c) in curves.iter_mut().enumerate() {
        *c = c.offset(&(&eps * q(i as i64 + 1)));
        c.validate(model)?;
    }
    let curves = minimal_position(model, &curves)?;
    for i in 0..k {
        let j = (i + 1) % k;
        if intersection_count(&curves[i], &curves[j])? == 0 {
            return Err(CurveError::CrossingFree(curves[i].name.clone()));
        }
    }
    let emb = to_stacked_diagram(model, &curves)?;
    let d = emb.diagram;
    let salient: Vec<usize> = (0..k)
        .map(|i| *d.crossings_between(i, (i + 1) % k).choose(rng).expect("consecutive curves meet"))
        .collect();
    let diagram = d.with_salient(Some(salient))?;
    Ok(Sample {
        model: model.clone(),
        curves,
        diagram,
    })
}

/// Smallest gap between distinct coordinates on either axis.
fn min_gap(model: &PlanarModel, curves: &[PlCurve]) -> Q {
    let mut xs: Vec<Q> = vec![model.frame.x0.clone(), model.frame.x1.clone()];
    let mut ys: Vec<Q> = vec![model.frame.y0.clone(), model.frame.y1.clone()];
    for (_, _, r) in model.holes() {
        xs.extend([r.x0.clone(), r.x1.clone()]);
        ys.extend([r.y0.clone(), r.y1.clone()]);
    }
    for c in curves {
        for v in &c.vertices {
            xs.push(v.p.x.clone());
            ys.push(v.p.y.clone());
        }
    }
    let mut g: Option<Q> = None;
    for v in [&mut xs, &mut ys] {
        v.sort();
        v.dedup();
        for w in v.windows(2) {
            let d = &w[1] - &w[0];
            if g.as_ref().map_or(true, |g| &d < g) {
                g = Some(d);
            }
        }
    }
    g.unwrap_or_else(|| q(1))
}
