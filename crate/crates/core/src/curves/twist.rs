//! Dehn twists of rectilinear curves.
//!
//! A twist about `c` reroutes every crossing arc of a target around a thin
//! collar of `c`. With several targets twisted together, each arc runs at its
//! own level inside the collar and steps up one level just before passing
//! another arc, so disjoint targets stay disjoint.

use std::collections::HashMap;
use std::fmt;

use num_traits::Signed;

use super::arrangement::sweep_pairs;
use super::geom::{contact, min_q, q, seg_dist, Contact, Point, Seg, Q};
use super::model::PlanarModel;
use super::plcurve::{PlCurve, Vertex};
use super::CurveError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistLetter {
    pub curve: String,
    pub inverse: bool,
}

/// Word in Dehn twists, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistWord {
    pub letters: Vec<TwistLetter>,
}

impl TwistWord {
    /// Parses tokens `t_<name>` or `t_<name>^-1` separated by `*` or whitespace.
    pub fn parse(text: &str) -> Result<TwistWord, CurveError> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let body = tok
                .strip_prefix("t_")
                .ok_or_else(|| CurveError::Word(format!("expected `t_<name>`, found `{tok}`")))?;
            let (name, inverse) = match body.split_once('^') {
                None => (body, false),
                Some((n, "-1")) => (n, true),
                Some((n, "1")) | Some((n, "+1")) => (n, false),
                Some((_, e)) => return Err(CurveError::Word(format!("bad exponent `{e}` in `{tok}`"))),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(CurveError::Word(format!("bad curve name in `{tok}`")));
            }
            letters.push(TwistLetter {
                curve: name.to_string(),
                inverse,
            });
        }
        Ok(TwistWord { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| TwistLetter {
                    curve: l.curve.clone(),
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    /// Checks every letter names a curve in `names`.
    pub fn resolve(&self, names: &[&str]) -> Result<(), CurveError> {
        match self.letters.iter().find(|l| !names.contains(&l.curve.as_str())) {
            Some(l) => Err(CurveError::UnknownCurve(l.curve.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("t_{}{}", l.curve, if l.inverse { "^-1" } else { "" }))
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

fn not_transverse(a: &str, b: &str, at: &Point) -> CurveError {
    CurveError::NotTransverse {
        a: a.to_string(),
        b: b.to_string(),
        at: at.to_string(),
    }
}

/// Width available around `c`: the smallest gap between `c` and anything
/// else, counting crossing points as obstacles along both edges.
pub fn clearance(model: &PlanarModel, c: &PlCurve, wires: &[&PlCurve]) -> Result<Q, CurveError> {
    let csegs = c.segments();
    let mut g = csegs.iter().map(|(_, s)| s.len()).reduce(min_q).unwrap_or_else(|| q(1));
    let pad = super::geom::to_f64(&g);

    // Items: c edges (expanded), other wires, hole sides, frame sides.
    enum Item<'a> {
        C(usize, &'a Seg),
        Wire(usize, Seg),
        Hole(Seg),
    }
    let mut items: Vec<Item> = csegs.iter().map(|(e, s)| Item::C(*e, s)).collect();
    for (wi, w) in wires.iter().enumerate() {
        for (_, s) in w.segments() {
            items.push(Item::Wire(wi, s));
        }
    }
    for (_, _, r) in model.holes() {
        for s in r.sides() {
            items.push(Item::Hole(s));
        }
    }
    for s in model.frame.sides() {
        items.push(Item::Wire(usize::MAX, s));
    }
    let boxes: Vec<[f64; 4]> = items
        .iter()
        .map(|it| match it {
            Item::C(_, s) => {
                let b = s.bbox_f64();
                [b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad]
            }
            Item::Wire(_, s) | Item::Hole(s) => s.bbox_f64(),
        })
        .collect();
    let mut hits: Vec<Vec<Q>> = vec![Vec::new(); c.len()];
    let mut err = None;
    sweep_pairs(&boxes, |i, j| {
        if err.is_some() {
            return;
        }
        let (ce, cs, other) = match (&items[i], &items[j]) {
            (Item::C(e, s), o) | (o, Item::C(e, s)) if !matches!(o, Item::C(..)) => (*e, *s, o),
            (Item::C(e, s), Item::C(f, t)) => {
                if c.next(*e) != *f && c.next(*f) != *e {
                    g = min_q(g.clone(), seg_dist(s, t));
                }
                return;
            }
            _ => return,
        };
        match other {
            Item::Wire(wi, w) => match contact(cs, w) {
                Contact::None => g = min_q(g.clone(), seg_dist(cs, w)),
                Contact::Cross(p) => {
                    for end in [&cs.a, &cs.b, &w.a, &w.b] {
                        g = min_q(g.clone(), p.dist(end));
                    }
                    hits[ce].push(cs.offset_of(&p));
                }
                _ => {
                    let name = wires.get(*wi).map(|w| w.name.as_str()).unwrap_or("frame");
                    err = Some(not_transverse(&c.name, name, &cs.a));
                }
            },
            Item::Hole(h) => match contact(cs, h) {
                Contact::None => g = min_q(g.clone(), seg_dist(cs, h)),
                Contact::Touch(p) => {
                    g = min_q(g.clone(), p.dist(&h.a));
                    g = min_q(g.clone(), p.dist(&h.b));
                }
                _ => err = Some(not_transverse(&c.name, "hole boundary", &cs.a)),
            },
            Item::C(..) => {}
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    for v in &mut hits {
        v.sort();
        for w in v.windows(2) {
            g = min_q(g.clone(), &w[1] - &w[0]);
        }
    }
    if !g.is_positive() {
        return Err(CurveError::Curve {
            curve: c.name.clone(),
            message: "no clearance around curve".into(),
        });
    }
    Ok(g)
}

/// Smallest clearance over a whole curve system: the minimum of
/// [`clearance`] over its first `movable` curves, in one sweep. Pairs among
/// the remaining curves are ignored.
pub fn system_clearance(model: &PlanarModel, curves: &[PlCurve], movable: usize) -> Result<Q, CurveError> {
    enum Item {
        C(usize, usize, Seg),
        Hole(Seg),
        Frame(Seg),
    }
    let mut items = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        for (e, s) in c.segments() {
            items.push(Item::C(ci, e, s));
        }
    }
    let mut g = items
        .iter()
        .filter_map(|it| match it {
            Item::C(_, _, s) => Some(s.len()),
            _ => None,
        })
        .reduce(min_q)
        .unwrap_or_else(|| q(1));
    for (_, _, r) in model.holes() {
        items.extend(r.sides().into_iter().map(Item::Hole));
    }
    items.extend(model.frame.sides().into_iter().map(Item::Frame));
    let pad = super::geom::to_f64(&g);
    let boxes: Vec<[f64; 4]> = items
        .iter()
        .map(|it| {
            let b = match it {
                Item::C(_, _, s) | Item::Hole(s) | Item::Frame(s) => s.bbox_f64(),
            };
            [b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad]
        })
        .collect();
    let mut hits: HashMap<(usize, usize), Vec<Q>> = HashMap::new();
    let mut err = None;
    sweep_pairs(&boxes, |i, j| {
        if err.is_some() {
            return;
        }
        match (&items[i], &items[j]) {
            (Item::C(ci, e, s), Item::C(cj, f, t)) => {
                if *ci >= movable && *cj >= movable {
                    return;
                }
                let c = &curves[*ci];
                if ci == cj && (c.next(*e) == *f || c.next(*f) == *e) {
                    return;
                }
                match contact(s, t) {
                    Contact::None => g = min_q(g.clone(), seg_dist(s, t)),
                    Contact::Cross(p) if ci != cj => {
                        for end in [&s.a, &s.b, &t.a, &t.b] {
                            g = min_q(g.clone(), p.dist(end));
                        }
                        // Carried curves may overlap each other; only spacing
                        // along movable curves matters.
                        if *ci < movable {
                            hits.entry((*ci, *e)).or_default().push(s.offset_of(&p));
                        }
                        if *cj < movable {
                            hits.entry((*cj, *f)).or_default().push(t.offset_of(&p));
                        }
                    }
                    _ => err = Some(not_transverse(&c.name, &curves[*cj].name, &s.a)),
                }
            }
            (Item::C(ci, _, s), Item::Hole(h)) | (Item::Hole(h), Item::C(ci, _, s)) => match contact(s, h) {
                Contact::None => g = min_q(g.clone(), seg_dist(s, h)),
                Contact::Touch(p) => {
                    g = min_q(g.clone(), p.dist(&h.a));
                    g = min_q(g.clone(), p.dist(&h.b));
                }
                _ => err = Some(not_transverse(&curves[*ci].name, "hole boundary", &s.a)),
            },
            (Item::C(ci, _, s), Item::Frame(w)) | (Item::Frame(w), Item::C(ci, _, s)) => match contact(s, w) {
                Contact::None => g = min_q(g.clone(), seg_dist(s, w)),
                _ => err = Some(not_transverse(&curves[*ci].name, "frame", &s.a)),
            },
            _ => {}
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    for v in hits.values_mut() {
        v.sort();
        v.dedup();
        for w in v.windows(2) {
            g = min_q(g.clone(), &w[1] - &w[0]);
        }
    }
    if !g.is_positive() {
        return Err(CurveError::Curve {
            curve: String::new(),
            message: "no clearance in curve system".into(),
        });
    }
    Ok(g)
}

/// Where a target crosses the twist curve.
struct Window {
    edge: usize,
    t: Q,
    target: usize,
    target_edge: usize,
    /// Distance of the crossing from the start of the target edge.
    target_t: Q,
    /// Target crosses from the negative side of the collar to the positive side.
    rising: bool,
}

/// Point at arclength `t` on straight edge `e`, shifted by `u` to the left.
fn at(c: &PlCurve, e: usize, t: &Q, u: &Q) -> Point {
    let d = c.edge(e).dir();
    c.vertices[e].p.step(d, t).step(d.left(), u)
}

/// Appends the corners of the level-`u` path from edge `from` forward to edge
/// `to`. With `from == to` and `full`, goes once around.
fn travel(c: &PlCurve, from: usize, to: usize, full: bool, u: &Q, out: &mut Vec<Vertex>) {
    let mut e = from;
    let mut first = true;
    while e != to || (first && full) {
        first = false;
        let k = c.next(e);
        out.push(c.offset_vertex(k, u));
        e = if c.vertices[k].jump {
            let k2 = c.next(k);
            out.push(c.offset_vertex(k2, u));
            k2
        } else {
            k
        };
    }
}

/// Twists targets about the collar of `c` on side `sigma` (+1 left), running
/// arcs forward along `c`. This is the right twist for `sigma = 1`.
fn twist_core(c: &PlCurve, sigma: i64, targets: &[PlCurve], g: &Q) -> Result<Vec<PlCurve>, CurveError> {
    let mut windows = Vec::new();
    for (ti, t) in targets.iter().enumerate() {
        for (f, ts) in t.segments() {
            for (e, cs) in c.segments() {
                match contact(&cs, &ts) {
                    Contact::None => {}
                    Contact::Cross(p) => windows.push(Window {
                        edge: e,
                        t: cs.offset_of(&p),
                        target: ti,
                        target_edge: f,
                        target_t: ts.offset_of(&p),
                        rising: cs.dir().cross(ts.dir()) * sigma > 0,
                    }),
                    _ => return Err(not_transverse(&c.name, &t.name, &cs.a)),
                }
            }
        }
    }
    if windows.is_empty() {
        return Ok(targets.to_vec());
    }
    windows.sort_by(|a, b| (a.edge, &a.t).cmp(&(b.edge, &b.t)));
    let n = windows.len();
    let eps = g / q(8);
    let big_u = g / q(4) * q(sigma);
    let delta = &big_u / q(n as i64 + 1);
    let level = |r: usize| &delta * q(r as i64);

    let mut detours: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    for k in 0..n {
        let w = &windows[k];
        let mut d = vec![
            Vertex::at(at(c, w.edge, &w.t, &(-&big_u))),
            Vertex::at(at(c, w.edge, &w.t, &level(1))),
        ];
        let (mut e, mut t) = (w.edge, w.t.clone());
        let mut r = 1;
        for step in 1..n {
            let o = &windows[(k + step) % n];
            // Higher levels step up earlier so stacked jogs never touch.
            let jog = &o.t - &eps * q((n + r) as i64) / q(n as i64);
            let wrap = o.edge == e && jog <= t;
            travel(c, e, o.edge, wrap, &level(r), &mut d);
            d.push(Vertex::at(at(c, o.edge, &jog, &level(r))));
            r += 1;
            d.push(Vertex::at(at(c, o.edge, &jog, &level(r))));
            e = o.edge;
            t = jog;
        }
        let back = &w.t - &eps - &eps;
        let wrap = n == 1 || (w.edge == e && back <= t);
        travel(c, e, w.edge, wrap, &level(r), &mut d);
        d.push(Vertex::at(at(c, w.edge, &back, &level(r))));
        d.push(Vertex::at(at(c, w.edge, &back, &big_u)));
        d.push(Vertex::at(at(c, w.edge, &w.t, &big_u)));
        detours.push(d);
    }

    let mut out = Vec::with_capacity(targets.len());
    for (ti, t) in targets.iter().enumerate() {
        let mut mine: Vec<usize> = (0..n).filter(|&k| windows[k].target == ti).collect();
        if mine.is_empty() {
            out.push(t.clone());
            continue;
        }
        mine.sort_by(|&a, &b| {
            (windows[a].target_edge, &windows[a].target_t).cmp(&(windows[b].target_edge, &windows[b].target_t))
        });
        let mut vs = Vec::new();
        let mut it = mine.iter().peekable();
        for (vi, v) in t.vertices.iter().enumerate() {
            vs.push(v.clone());
            while let Some(&&k) = it.peek() {
                if windows[k].target_edge != vi {
                    break;
                }
                it.next();
                if windows[k].rising {
                    vs.extend(detours[k].iter().cloned());
                } else {
                    vs.extend(reverse_path(&detours[k]));
                }
            }
        }
        out.push(PlCurve::new(t.name.clone(), vs).simplified());
    }
    Ok(out)
}

/// Reverses an open path, moving transit flags onto the new edge starts.
fn reverse_path(d: &[Vertex]) -> Vec<Vertex> {
    let m = d.len();
    (0..m)
        .map(|k| Vertex {
            p: d[m - 1 - k].p.clone(),
            jump: k + 1 < m && d[m - 2 - k].jump,
        })
        .collect()
}

/// Twists all `targets` about `c` at once (`sign` +1 right, -1 left). The
/// `background` curves only constrain the collar width.
pub fn twist_joint(
    model: &PlanarModel,
    c: &PlCurve,
    targets: &[PlCurve],
    background: &[&PlCurve],
    sign: i8,
) -> Result<Vec<PlCurve>, CurveError> {
    let mut out: Vec<Option<PlCurve>> = vec![None; targets.len()];
    let mut live = Vec::new();
    for (i, t) in targets.iter().enumerate() {
        if t.vertices == c.vertices {
            out[i] = Some(t.clone());
        } else {
            live.push(i);
        }
    }
    let live_targets: Vec<PlCurve> = live.iter().map(|&i| targets[i].clone()).collect();
    let mut wires: Vec<&PlCurve> = live_targets.iter().collect();
    wires.extend(background.iter().copied().filter(|b| b.vertices != c.vertices));
    let g = clearance(model, c, &wires)?;
    let twisted = if sign >= 0 {
        twist_core(c, 1, &live_targets, &g)?
    } else {
        twist_core(&c.reversed(), -1, &live_targets, &g)?
    };
    for (k, i) in live.into_iter().enumerate() {
        out[i] = Some(twisted[k].clone());
    }
    Ok(out.into_iter().map(|c| c.expect("every target handled")).collect())
}

/// Right (`sign = 1`) or left (`sign = -1`) Dehn twist of one target about `c`.
pub fn dehn_twist(model: &PlanarModel, c: &PlCurve, target: &PlCurve, sign: i8) -> Result<PlCurve, CurveError> {
    Ok(twist_joint(model, c, std::slice::from_ref(target), &[], sign)?.remove(0))
}

/// Applies a word letter by letter (left to right) to all targets jointly.
pub fn apply_word(
    model: &PlanarModel,
    dictionary: &[PlCurve],
    word: &TwistWord,
    targets: &[PlCurve],
    background: &[&PlCurve],
) -> Result<Vec<PlCurve>, CurveError> {
    let names: Vec<&str> = dictionary.iter().map(|c| c.name.as_str()).collect();
    word.resolve(&names)?;
    let mut cur = targets.to_vec();
    for l in &word.letters {
        let c = dictionary.iter().find(|c| c.name == l.curve).expect("resolved");
        cur = twist_joint(model, c, &cur, background, if l.inverse { -1 } else { 1 })?;
    }
    Ok(cur)
}
