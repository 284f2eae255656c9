use num_traits::{Signed, Zero};

use super::arrangement::sweep_pairs;
use super::geom::{contact, Contact, Dir, Point, Seg, Q};
use super::model::PlanarModel;
use super::CurveError;

/// A vertex of a closed polyline. When `jump` is set the curve leaves the
/// surface through the hole side at `p` and reappears at the glued partner,
/// which must be the next vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub p: Point,
    pub jump: bool,
}

impl Vertex {
    pub fn at(p: Point) -> Self {
        Vertex { p, jump: false }
    }

    pub fn jump(p: Point) -> Self {
        Vertex { p, jump: true }
    }
}

/// Closed rectilinear curve on a planar model. Edge `i` runs from vertex `i` to
/// vertex `i + 1` (cyclically); it is a transit if vertex `i` is a jump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlCurve {
    pub name: String,
    pub vertices: Vec<Vertex>,
}

impl PlCurve {
    pub fn new(name: impl Into<String>, vertices: Vec<Vertex>) -> Self {
        PlCurve {
            name: name.into(),
            vertices,
        }
    }

    /// Plain polygon without transits.
    pub fn polygon(name: impl Into<String>, pts: Vec<Point>) -> Self {
        PlCurve::new(name, pts.into_iter().map(Vertex::at).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.vertices.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.vertices.len() - 1) % self.vertices.len()
    }

    pub fn is_transit(&self, e: usize) -> bool {
        self.vertices[e].jump
    }

    pub fn edge(&self, e: usize) -> Seg {
        Seg::new(self.vertices[e].p.clone(), self.vertices[self.next(e)].p.clone())
    }

    /// Straight edges as `(edge index, segment)`.
    pub fn segments(&self) -> Vec<(usize, Seg)> {
        (0..self.len())
            .filter(|&e| !self.is_transit(e))
            .map(|e| (e, self.edge(e)))
            .collect()
    }

    pub fn transit_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.jump).count()
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> PlCurve {
        let n = self.len();
        let vertices = (0..n)
            .map(|k| {
                let i = (n - k) % n;
                // Reversed edge (i -> i-1) is the old edge i-1.
                let jump = self.vertices[self.prev(i)].jump;
                Vertex {
                    p: self.vertices[i].p.clone(),
                    jump,
                }
            })
            .collect();
        PlCurve::new(self.name.clone(), vertices)
    }

    /// Drops vertices in the middle of straight collinear runs.
    pub fn simplified(&self) -> PlCurve {
        let mut vs = self.vertices.clone();
        loop {
            let n = vs.len();
            if n <= 4 {
                break;
            }
            let mut removed = false;
            for i in 0..n {
                let pi = (i + n - 1) % n;
                let ni = (i + 1) % n;
                if vs[pi].jump || vs[i].jump {
                    continue;
                }
                let d1 = Dir::of(&vs[pi].p, &vs[i].p);
                let d2 = Dir::of(&vs[i].p, &vs[ni].p);
                if d1.is_some() && d1 == d2 {
                    vs.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        PlCurve::new(self.name.clone(), vs)
    }

    fn straight_dir(&self, e: usize) -> Option<Dir> {
        if self.is_transit(e) {
            None
        } else {
            Dir::of(&self.vertices[e].p, &self.vertices[self.next(e)].p)
        }
    }

    /// Parallel copy at signed distance `u` (positive is left of travel).
    pub fn offset(&self, u: &Q) -> PlCurve {
        let vertices = (0..self.len()).map(|i| self.offset_vertex(i, u)).collect();
        PlCurve::new(self.name.clone(), vertices)
    }

    /// Offset position of vertex `i` at signed distance `u`.
    pub fn offset_vertex(&self, i: usize, u: &Q) -> Vertex {
        let v = &self.vertices[i];
        let d_in = self.straight_dir(self.prev(i));
        let d_out = self.straight_dir(i);
        let p = match (d_in, d_out) {
            (Some(a), Some(b)) if a == b => v.p.step(a.left(), u),
            (Some(a), Some(b)) => v.p.step(a.left(), u).step(b.left(), u),
            (Some(a), None) => v.p.step(a.left(), u),
            (None, Some(b)) => v.p.step(b.left(), u),
            (None, None) => v.p.clone(),
        };
        Vertex { p, jump: v.jump }
    }

    /// Checks the curve is a simple closed rectilinear curve on the model.
    pub fn validate(&self, model: &PlanarModel) -> Result<(), CurveError> {
        let bad = |m: String| {
            Err(CurveError::Curve {
                curve: self.name.clone(),
                message: m,
            })
        };
        let n = self.len();
        if n < 2 {
            return bad("needs at least two vertices".into());
        }
        for i in 0..n {
            let v = &self.vertices[i];
            let w = &self.vertices[self.next(i)];
            if !model.frame.contains_open(&v.p) {
                return bad(format!("vertex {} lies outside the frame", v.p));
            }
            if model.in_hole(&v.p) {
                return bad(format!("vertex {} lies inside a hole", v.p));
            }
            if v.jump {
                if self.vertices[self.prev(i)].jump || w.jump {
                    return bad(format!("consecutive transits at {}", v.p));
                }
                let Some(hs) = model.hole_side_of(&v.p) else {
                    return bad(format!("transit at {} is not on a hole side", v.p));
                };
                let (img, hs2) = model.partner(&v.p).expect("side point has a partner");
                if img != w.p {
                    return bad(format!("transit from {} must land at {}, found {}", v.p, img, w.p));
                }
                // Arrive moving into the hole, leave moving out of the partner.
                let d_in = self.straight_dir(self.prev(i));
                let d_out = self.straight_dir(self.next(i));
                if d_in != Some(hs.side.outward().opposite()) || d_out != Some(hs2.side.outward()) {
                    return bad(format!("transit at {} must be perpendicular to the hole side", v.p));
                }
            } else if Dir::of(&v.p, &w.p).is_none() {
                return bad(format!("edge {} -> {} is not axis-parallel with positive length", v.p, w.p));
            }
        }
        for i in 0..n {
            if let (Some(a), Some(b)) = (self.straight_dir(self.prev(i)), self.straight_dir(i)) {
                if a == b.opposite() {
                    return bad(format!("curve doubles back at {}", self.vertices[i].p));
                }
            }
        }
        let segs = self.segments();
        for (e, s) in &segs {
            if model.in_hole(&s.point_at(&(s.len() / Q::from_integer(2.into())))) {
                return bad(format!("edge from {} passes through a hole", s.a));
            }
            for (_, _, r) in model.holes() {
                for side in r.sides() {
                    match contact(s, &side) {
                        Contact::None => {}
                        Contact::Touch(p) => {
                            let at_jump_end = p == s.b && self.vertices[self.next(*e)].jump;
                            let at_land_start = p == s.a && self.vertices[self.prev(*e)].jump;
                            if !(at_jump_end || at_land_start) || r.side_of(&p).is_none() {
                                return bad(format!("edge touches a hole boundary at {p}"));
                            }
                        }
                        _ => return bad(format!("edge from {} meets a hole boundary", s.a)),
                    }
                }
            }
        }
        let boxes: Vec<[f64; 4]> = segs.iter().map(|(_, s)| s.bbox_f64()).collect();
        let mut err = None;
        sweep_pairs(&boxes, |i, j| {
            if err.is_some() {
                return;
            }
            let ((e, s), (f, t)) = (&segs[i], &segs[j]);
            let adjacent_fwd = self.next(*e) == *f;
            let adjacent_bwd = self.next(*f) == *e;
            match contact(s, t) {
                Contact::None => {}
                Contact::Touch(p) => {
                    let ok = (adjacent_fwd && p == s.b) || (adjacent_bwd && p == s.a);
                    if !ok {
                        err = Some(format!("curve touches itself at {p}"));
                    }
                }
                Contact::Cross(p) => err = Some(format!("curve crosses itself at {p}")),
                Contact::Overlap => err = Some("curve overlaps itself".into()),
            }
        });
        if let Some(m) = err {
            return bad(m);
        }
        Ok(())
    }

    /// Signed area enclosed by the planar polygon (only for curves without transits).
    pub fn signed_area(&self) -> Option<Q> {
        if self.transit_count() > 0 {
            return None;
        }
        let mut a = Q::zero();
        for i in 0..self.len() {
            let p = &self.vertices[i].p;
            let q = &self.vertices[self.next(i)].p;
            a += &p.x * &q.y - &q.x * &p.y;
        }
        Some(a / Q::from_integer(2.into()))
    }

    pub fn is_ccw(&self) -> Option<bool> {
        self.signed_area().map(|a| a.is_positive())
    }
}
