//! Even respacing of curve coordinates.
//!
//! Repeated twisting shrinks features geometrically. [`respace`] applies a
//! homeomorphism of the surface of the form `(x, y) -> (f(x), g(y))` with `f`
//! and `g` increasing and piecewise linear, fixing every frame and hole side and
//! commuting with the gluings, so the combinatorics of the curves are unchanged.

use std::collections::{BTreeSet, HashMap};

use super::geom::{q, Point, Q};
use super::model::{Mirror, PlanarModel};
use super::plcurve::PlCurve;

#[derive(Clone, Copy)]
enum Axis {
    X,
    Y,
}

impl Axis {
    fn of<'a>(self, p: &'a Point) -> &'a Q {
        match self {
            Axis::X => &p.x,
            Axis::Y => &p.y,
        }
    }
}

/// Moves the vertices of `curves` so that, between consecutive fixed
/// coordinates, the distinct coordinates are evenly spaced.
pub fn respace(model: &PlanarModel, curves: &mut [PlCurve]) {
    let fx = axis_map(model, curves, Axis::X);
    let fy = axis_map(model, curves, Axis::Y);
    for c in curves {
        for v in &mut c.vertices {
            v.p = Point::new(fx[&v.p.x].clone(), fy[&v.p.y].clone());
        }
    }
}

fn axis_map(model: &PlanarModel, curves: &[PlCurve], axis: Axis) -> HashMap<Q, Q> {
    let span = |lo: &Q, hi: &Q| (lo.clone(), hi.clone());
    let (flo, fhi) = match axis {
        Axis::X => span(&model.frame.x0, &model.frame.x1),
        Axis::Y => span(&model.frame.y0, &model.frame.y1),
    };
    let mut anchors: BTreeSet<Q> = [flo, fhi].into_iter().collect();
    // (lo, hi, c): hole range on this axis reflected about c onto its partner.
    let mut mirrors: Vec<(Q, Q, Q)> = Vec::new();
    for (_, _, r) in model.holes() {
        let (lo, hi) = match axis {
            Axis::X => span(&r.x0, &r.x1),
            Axis::Y => span(&r.y0, &r.y1),
        };
        anchors.insert(lo);
        anchors.insert(hi);
    }
    for p in &model.pairs {
        match (&p.mirror, axis) {
            (Mirror::X(c), Axis::X) => mirrors.push((p.a.x0.clone(), p.a.x1.clone(), c.clone())),
            (Mirror::Y(c), Axis::Y) => mirrors.push((p.a.y0.clone(), p.a.y1.clone(), c.clone())),
            _ => {}
        }
    }
    let reflect = |c: &Q, t: &Q| q(2) * c - t;
    // Anchors inside a mirrored range need their images fixed too.
    for _ in 0..64 {
        let mut add = Vec::new();
        for (lo, hi, c) in &mirrors {
            let (blo, bhi) = (reflect(c, hi), reflect(c, lo));
            for t in &anchors {
                if (lo < t && t < hi) || (&blo < t && t < &bhi) {
                    let m = reflect(c, t);
                    if !anchors.contains(&m) {
                        add.push(m);
                    }
                }
            }
        }
        if add.is_empty() {
            break;
        }
        anchors.extend(add);
    }

    let coords: BTreeSet<Q> = curves
        .iter()
        .flat_map(|c| c.vertices.iter().map(move |v| axis.of(&v.p).clone()))
        .collect();
    let mut map: HashMap<Q, Q> = HashMap::with_capacity(coords.len());
    for t in coords.iter().filter(|t| anchors.contains(*t)) {
        map.insert(t.clone(), t.clone());
    }
    let anchors: Vec<Q> = anchors.into_iter().collect();
    let inside = |l: &Q, r: &Q| -> Vec<Q> {
        use std::ops::Bound::Excluded;
        coords.range((Excluded(l.clone()), Excluded(r.clone()))).cloned().collect()
    };
    for w in anchors.windows(2) {
        let (l, r) = (&w[0], &w[1]);
        let primary = mirrors.iter().find(|(lo, hi, _)| lo <= l && r <= hi);
        let secondary = mirrors
            .iter()
            .any(|(lo, hi, c)| &reflect(c, hi) <= l && r <= &reflect(c, lo));
        match primary {
            Some((_, _, c)) => {
                let mut s: BTreeSet<Q> = inside(l, r).into_iter().collect();
                s.extend(inside(&reflect(c, r), &reflect(c, l)).iter().map(|t| reflect(c, t)));
                for (t, n) in spread(l, r, s.into_iter().collect()) {
                    map.insert(reflect(c, &t), reflect(c, &n));
                    map.insert(t, n);
                }
            }
            None if secondary => {}
            None => map.extend(spread(l, r, inside(l, r))),
        }
    }
    map
}

fn spread(l: &Q, r: &Q, ts: Vec<Q>) -> Vec<(Q, Q)> {
    let k = ts.len() as i64;
    let step = (r - l) / q(k + 1);
    ts.into_iter()
        .enumerate()
        .map(|(i, t)| (t, l + &step * q(i as i64 + 1)))
        .collect()
}
