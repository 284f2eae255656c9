//! Adding a handle along an arc that meets some curves exactly once.

use super::geom::{contact, min_q, q, ratio, seg_dist, Contact, Point, Seg, Q};
use super::model::{HolePair, Mirror, PlanarModel, Rect};
use super::plcurve::{PlCurve, Vertex};
use super::CurveError;

/// The handle added by [`tube_substitute`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tube {
    pub arc: Seg,
    /// Hole width; the holes sit at distance `w` to `2w` on either side of the arc.
    pub w: Q,
    pub pair: usize,
}

impl Tube {
    /// The hole on the negative side of the arc.
    pub fn foot(&self, model: &PlanarModel) -> Rect {
        model.pairs[self.pair].a.clone()
    }

    /// A curve running once around the negative foot, clear of everything
    /// except the curves that pass over the tube.
    pub fn belt(&self, model: &PlanarModel, name: &str) -> PlCurve {
        let r = self.foot(model);
        let eta = &self.w / q(4);
        let (x0, y0, x1, y1) = (&r.x0 - &eta, &r.y0 - &eta, &r.x1 + &eta, &r.y1 + &eta);
        PlCurve::polygon(
            name,
            vec![
                Point::new(x0.clone(), y0.clone()),
                Point::new(x1.clone(), y0),
                Point::new(x1, y1.clone()),
                Point::new(x0, y1),
            ],
        )
    }
}

fn vertical(arc: &Seg) -> bool {
    !arc.is_horizontal()
}

/// Along-arc coordinate and across-arc coordinate of a point.
fn split(arc: &Seg, p: &Point) -> (Q, Q) {
    if vertical(arc) {
        (p.y.clone(), p.x.clone())
    } else {
        (p.x.clone(), p.y.clone())
    }
}

fn join(arc: &Seg, along: Q, across: Q) -> Point {
    if vertical(arc) {
        Point::new(across, along)
    } else {
        Point::new(along, across)
    }
}

/// Crossings of each curve with the arc, as `(edge, point)`.
fn arc_hits(arc: &Seg, c: &PlCurve) -> Result<Vec<(usize, Point)>, CurveError> {
    let mut out = Vec::new();
    for (e, s) in c.segments() {
        match contact(arc, &s) {
            Contact::None => {}
            Contact::Cross(p) => out.push((e, p)),
            _ => {
                return Err(CurveError::NotTransverse {
                    a: "arc".into(),
                    b: c.name.clone(),
                    at: s.a.to_string(),
                })
            }
        }
    }
    Ok(out)
}

/// Replaces a neighbourhood of `arc` by a handle; every curve crossing the arc
/// (exactly once each) is rerouted over it.
pub fn tube_substitute(
    model: &PlanarModel,
    arc: &Seg,
    curves: &[PlCurve],
) -> Result<(PlanarModel, Vec<PlCurve>, Tube), CurveError> {
    let mut hits = Vec::with_capacity(curves.len());
    for c in curves {
        let h = arc_hits(arc, c)?;
        if h.len() > 1 {
            return Err(CurveError::ArcCrossings {
                curve: c.name.clone(),
                count: h.len(),
            });
        }
        hits.push(h.into_iter().next());
    }
    if hits.iter().all(Option::is_none) {
        return Err(CurveError::ArcNotFound);
    }

    // Room around the arc.
    let mut d = arc.len();
    for (c, h) in curves.iter().zip(&hits) {
        for (e, s) in c.segments() {
            match h {
                Some((he, p)) if *he == e => {
                    d = min_q(d, p.dist(&s.a));
                    d = min_q(d, p.dist(&s.b));
                    d = min_q(d, p.dist(&arc.a));
                    d = min_q(d, p.dist(&arc.b));
                }
                _ => d = min_q(d, seg_dist(arc, &s)),
            }
        }
    }
    for (_, _, r) in model.holes() {
        for s in r.sides() {
            d = min_q(d, seg_dist(arc, &s));
        }
    }
    for s in model.frame.sides() {
        d = min_q(d, seg_dist(arc, &s));
    }
    let w = d / q(4);

    let (lo, c0) = split(arc, &arc.a);
    let (hi, _) = split(arc, &arc.b);
    let (lo, hi) = if lo < hi { (lo, hi) } else { (hi, lo) };
    let near = &c0 - &w - &w;
    let mid = &c0 - &w;
    let foot = if vertical(arc) {
        Rect::new(near.clone(), lo.clone(), mid, hi.clone())
    } else {
        Rect::new(lo.clone(), near.clone(), hi.clone(), mid)
    };
    let mirror = if vertical(arc) { Mirror::X(c0.clone()) } else { Mirror::Y(c0.clone()) };
    let mut pairs = model.pairs.clone();
    pairs.push(HolePair::new(foot, mirror));
    let new_model = PlanarModel::new(model.frame.clone(), pairs)?;
    let far = &c0 + &w + &w;

    let mut out = Vec::with_capacity(curves.len());
    for (c, h) in curves.iter().zip(&hits) {
        let Some((e, p)) = h else {
            out.push(c.clone());
            continue;
        };
        let (along, _) = split(arc, p);
        let s = c.edge(*e);
        let (_, a_across) = split(arc, &s.a);
        let increasing = a_across < c0;
        let (enter, exit) = if increasing { (&near, &far) } else { (&far, &near) };
        let mut vs = Vec::with_capacity(c.len() + 2);
        for (i, v) in c.vertices.iter().enumerate() {
            vs.push(v.clone());
            if i == *e {
                vs.push(Vertex::jump(join(arc, along.clone(), enter.clone())));
                vs.push(Vertex::at(join(arc, along.clone(), exit.clone())));
            }
        }
        let nc = PlCurve::new(c.name.clone(), vs);
        nc.validate(&new_model)?;
        out.push(nc);
    }
    let tube = Tube {
        arc: arc.clone(),
        w,
        pair: new_model.pairs.len() - 1,
    };
    Ok((new_model, out, tube))
}

struct Wires {
    /// `(segment, owning curve)`.
    segs: Vec<(Seg, Option<usize>)>,
}

impl Wires {
    fn new(model: &PlanarModel, curves: &[PlCurve]) -> Wires {
        let mut segs = Vec::new();
        for (ci, c) in curves.iter().enumerate() {
            for (_, s) in c.segments() {
                segs.push((s, Some(ci)));
            }
        }
        for (_, _, r) in model.holes() {
            for s in r.sides() {
                segs.push((s, None));
            }
        }
        for s in model.frame.sides() {
            segs.push((s, None));
        }
        Wires { segs }
    }
}

/// Leftmost (then lowest) axis-parallel arc meeting each listed curve once and
/// no other wire. Vertical lines are tried before horizontal ones.
pub fn find_transversal_arc(model: &PlanarModel, curves: &[PlCurve], listed: &[usize]) -> Result<Seg, CurveError> {
    if listed.is_empty() {
        return Err(CurveError::ArcNotFound);
    }
    let wires = Wires::new(model, curves);
    for vert in [true, false] {
        if let Some(s) = scan(model, &wires, listed, vert) {
            return Ok(s);
        }
    }
    Err(CurveError::ArcNotFound)
}

fn scan(model: &PlanarModel, wires: &Wires, listed: &[usize], vert: bool) -> Option<Seg> {
    // In this function "x" is the coordinate across the scan lines.
    let xy = |p: &Point| if vert { (p.x.clone(), p.y.clone()) } else { (p.y.clone(), p.x.clone()) };
    let (flo, fhi) = if vert {
        (model.frame.x0.clone(), model.frame.x1.clone())
    } else {
        (model.frame.y0.clone(), model.frame.y1.clone())
    };
    let is_parallel = |s: &Seg| s.is_horizontal() != vert;
    let mut coords: Vec<Q> = wires
        .segs
        .iter()
        .filter(|(s, _)| is_parallel(s))
        .map(|(s, _)| xy(&s.a).0)
        .collect();
    coords.sort();
    coords.dedup();
    let mut cands: Vec<Q> = coords.windows(2).map(|w| (&w[0] + &w[1]) / q(2)).collect();
    let half = ratio(1, 2);
    let mut g = (&flo / &half).ceil() * &half;
    while g < fhi {
        cands.push(g.clone());
        g += &half;
    }
    cands.retain(|c| &flo < c && c < &fhi);
    cands.sort();
    cands.dedup();
    let occupied: std::collections::HashSet<Q> = coords.into_iter().collect();
    let mut want: Vec<usize> = listed.to_vec();
    want.sort();
    let n = want.len();
    'line: for c in cands {
        if occupied.contains(&c) {
            continue;
        }
        let mut events: Vec<(Q, Option<usize>)> = Vec::new();
        for (s, owner) in &wires.segs {
            if is_parallel(s) {
                continue;
            }
            let (ax, ay) = xy(&s.a);
            let (bx, _) = xy(&s.b);
            let (lo, hi) = if ax < bx { (ax, bx) } else { (bx, ax) };
            if lo == c || hi == c {
                continue 'line;
            }
            if lo < c && c < hi {
                events.push((ay, *owner));
            }
        }
        events.sort();
        if events.len() < n + 2 {
            continue;
        }
        for i in 1..events.len() - n {
            let mut got: Vec<usize> = match events[i..i + n].iter().map(|e| e.1).collect::<Option<Vec<_>>>() {
                Some(v) => v,
                None => continue,
            };
            got.sort();
            if got != want {
                continue;
            }
            let lo = (&events[i - 1].0 + &events[i].0) / q(2);
            let hi = (&events[i + n - 1].0 + &events[i + n].0) / q(2);
            let (a, b) = if vert {
                (Point::new(c.clone(), lo), Point::new(c.clone(), hi))
            } else {
                (Point::new(lo, c.clone()), Point::new(hi, c.clone()))
            };
            return Some(Seg::new(a, b));
        }
    }
    None
}
