use std::collections::HashMap;

use super::geom::{contact, Contact, Dir, Point, Seg, Q};
use super::model::PlanarModel;
use super::plcurve::PlCurve;
use super::CurveError;
use crate::diagram::{Passage, StackedDiagram};

/// Calls `f(i, j)` (with `i < j`) for every pair of boxes that may overlap.
pub(crate) fn sweep_pairs(boxes: &[[f64; 4]], mut f: impl FnMut(usize, usize)) {
    let tol = |v: f64| 1e-9 * (1.0 + v.abs());
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| boxes[a][0].total_cmp(&boxes[b][0]));
    for (k, &i) in order.iter().enumerate() {
        let bi = boxes[i];
        for &j in &order[k + 1..] {
            let bj = boxes[j];
            if bj[0] > bi[2] + tol(bi[2]) {
                break;
            }
            if bj[1] <= bi[3] + tol(bi[3]) && bi[1] <= bj[3] + tol(bj[3]) {
                f(i.min(j), i.max(j));
            }
        }
    }
}

/// A transverse crossing between straight edges of two curves, `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCrossing {
    pub p: Point,
    pub a: usize,
    pub edge_a: usize,
    pub b: usize,
    pub edge_b: usize,
}

impl CurveCrossing {
    pub fn edge_of(&self, curve: usize) -> usize {
        if curve == self.a {
            self.edge_a
        } else {
            self.edge_b
        }
    }
}

/// All crossings between distinct curves. Errors on tangencies, overlaps and
/// triple points.
pub fn crossing_points(curves: &[PlCurve]) -> Result<Vec<CurveCrossing>, CurveError> {
    let mut segs: Vec<(usize, usize, Seg)> = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        for (e, s) in c.segments() {
            segs.push((ci, e, s));
        }
    }
    let boxes: Vec<[f64; 4]> = segs.iter().map(|(_, _, s)| s.bbox_f64()).collect();
    let mut out = Vec::new();
    let mut err = None;
    sweep_pairs(&boxes, |i, j| {
        if err.is_some() {
            return;
        }
        let (ci, ei, si) = &segs[i];
        let (cj, ej, sj) = &segs[j];
        if ci == cj {
            return;
        }
        match contact(si, sj) {
            Contact::None => {}
            Contact::Cross(p) => {
                let (a, edge_a, b, edge_b) = if ci < cj { (*ci, *ei, *cj, *ej) } else { (*cj, *ej, *ci, *ei) };
                out.push(CurveCrossing { p, a, edge_a, b, edge_b });
            }
            Contact::Touch(p) => {
                err = Some(CurveError::NotTransverse {
                    a: curves[*ci].name.clone(),
                    b: curves[*cj].name.clone(),
                    at: p.to_string(),
                })
            }
            Contact::Overlap => {
                err = Some(CurveError::NotTransverse {
                    a: curves[*ci].name.clone(),
                    b: curves[*cj].name.clone(),
                    at: si.a.to_string(),
                })
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    out.sort_by(|x, y| (x.a, x.b, &x.p).cmp(&(y.a, y.b, &y.p)));
    let mut seen: HashMap<&Point, usize> = HashMap::new();
    for c in &out {
        if seen.insert(&c.p, 0).is_some() {
            return Err(CurveError::TriplePoint(c.p.to_string()));
        }
    }
    Ok(out)
}

/// Geometric intersection count of two transverse curves.
pub fn intersection_count(a: &PlCurve, b: &PlCurve) -> Result<usize, CurveError> {
    Ok(crossing_points(&[a.clone(), b.clone()])?.len())
}

/// Crossings on curve `ci` in order of travel from vertex 0, as indices into `xs`.
pub(crate) fn order_along(curve: &PlCurve, ci: usize, xs: &[CurveCrossing]) -> Vec<usize> {
    let mut on: Vec<(usize, Q, usize)> = xs
        .iter()
        .enumerate()
        .filter(|(_, x)| x.a == ci || x.b == ci)
        .map(|(k, x)| {
            let e = x.edge_of(ci);
            (e, curve.vertices[e].p.dist(&x.p), k)
        })
        .collect();
    on.sort();
    on.into_iter().map(|(_, _, k)| k).collect()
}

/// A diagram together with the geometric position of each of its crossings.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub diagram: StackedDiagram,
    /// `crossings[x]` is the geometry of diagram crossing `x`.
    pub crossings: Vec<CurveCrossing>,
}

/// Combinatorial diagram of an ordered curve system. Crossings are named `x1,
/// x2, ...` in order of first appearance walking the curves in order.
pub fn to_stacked_diagram(model: &PlanarModel, curves: &[PlCurve]) -> Result<Embedded, CurveError> {
    for c in curves {
        c.validate(model)?;
    }
    let xs = crossing_points(curves)?;
    let mut id: Vec<Option<usize>> = vec![None; xs.len()];
    let mut geometry = Vec::with_capacity(xs.len());
    let mut passages = Vec::with_capacity(curves.len());
    for (ci, c) in curves.iter().enumerate() {
        let order = order_along(c, ci, &xs);
        if order.is_empty() {
            return Err(CurveError::CrossingFree(c.name.clone()));
        }
        let mut ps = Vec::with_capacity(order.len());
        for k in order {
            let x = *id[k].get_or_insert_with(|| {
                geometry.push(xs[k].clone());
                geometry.len() - 1
            });
            let cr = &xs[k];
            let entry = if ci == cr.a {
                0
            } else {
                let da = edge_dir(&curves[cr.a], cr.edge_a);
                let db = edge_dir(&curves[cr.b], cr.edge_b);
                if da.cross(db) > 0 {
                    1
                } else {
                    3
                }
            };
            ps.push(Passage::new(x, entry));
        }
        passages.push(ps);
    }
    let names = (1..=geometry.len()).map(|i| format!("x{i}")).collect();
    let diagram = StackedDiagram::new(passages, names, None, None)?;
    if diagram.genus() != model.genus() {
        return Err(CurveError::NotFilling {
            model: model.genus(),
            diagram: diagram.genus(),
        });
    }
    let diagram = StackedDiagram::new(diagram.curves().to_vec(), diagram.names().to_vec(), Some(model.genus()), None)?;
    Ok(Embedded {
        diagram,
        crossings: geometry,
    })
}

pub(crate) fn edge_dir(c: &PlCurve, e: usize) -> Dir {
    c.edge(e).dir()
}
