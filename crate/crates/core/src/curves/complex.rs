//! Cell complex of a curve system and bigon reduction.
//!
//! Wires are curve edges, hole sides, the frame, and vertical scaffold rays
//! that tie every planar component to the frame, so each face is a disk. Hole
//! sides are subdivided symmetrically and glued by the mirrors.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::arrangement::{crossing_points, sweep_pairs};
use super::geom::{contact, q, Contact, Dir, Point, Seg, Q};
use super::model::PlanarModel;
use super::plcurve::{PlCurve, Vertex};
use super::twist::system_clearance;
use super::respace::respace;
use super::CurveError;

const NONE: usize = usize::MAX;

fn di(d: Dir) -> usize {
    match d {
        Dir::E => 0,
        Dir::N => 1,
        Dir::W => 2,
        Dir::S => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Curve(usize, usize),
    Hole { pair: usize, which: usize },
    Frame,
    Ray,
}

struct Wire {
    seg: Seg,
    kind: Kind,
    pts: Vec<usize>,
}

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

struct Complex {
    pts: Vec<Point>,
    /// Edge `k` has half-edges `2k` (u -> v) and `2k + 1` (v -> u).
    edges: Vec<(usize, usize)>,
    edge_kind: Vec<Kind>,
    out: Vec<[usize; 4]>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    hole_face: Vec<bool>,
    across: Vec<usize>,
    canon_edge: Vec<usize>,
    canon_vertex: Vec<usize>,
    /// Glued partner of a hole-boundary vertex.
    partner: Vec<usize>,
    walks: Vec<Vec<usize>>,
    /// For a half-edge on a curve, its curve and position in that curve's walk;
    /// `false` if it runs against the walk.
    walk_pos: Vec<Option<(usize, usize, bool)>>,
    curves_at: Vec<Vec<usize>>,
}

impl Complex {
    fn from(&self, h: usize) -> usize {
        let (u, v) = self.edges[h / 2];
        if h % 2 == 0 {
            u
        } else {
            v
        }
    }

    fn to(&self, h: usize) -> usize {
        self.from(h ^ 1)
    }

    fn dir(&self, h: usize) -> Dir {
        Dir::of(&self.pts[self.from(h)], &self.pts[self.to(h)]).expect("axis-parallel edge")
    }

    fn build(model: &PlanarModel, curves: &[PlCurve]) -> Result<Complex, CurveError> {
        let mut wires: Vec<Wire> = Vec::new();
        let mut curve_wire: Vec<Vec<(usize, usize)>> = vec![Vec::new(); curves.len()];
        for (ci, c) in curves.iter().enumerate() {
            for (e, s) in c.segments() {
                curve_wire[ci].push((e, wires.len()));
                wires.push(Wire {
                    seg: s,
                    kind: Kind::Curve(ci, e),
                    pts: Vec::new(),
                });
            }
        }
        for (pair, which, r) in model.holes() {
            for s in r.sides() {
                wires.push(Wire {
                    seg: s,
                    kind: Kind::Hole { pair, which },
                    pts: Vec::new(),
                });
            }
        }
        for s in model.frame.sides() {
            wires.push(Wire {
                seg: s,
                kind: Kind::Frame,
                pts: Vec::new(),
            });
        }

        let mut pts: Vec<Point> = Vec::new();
        let mut index: HashMap<Point, usize> = HashMap::new();
        let mut pid = |p: Point, pts: &mut Vec<Point>| -> usize {
            *index.entry(p.clone()).or_insert_with(|| {
                pts.push(p);
                pts.len() - 1
            })
        };
        for w in wires.iter_mut() {
            let a = pid(w.seg.a.clone(), &mut pts);
            let b = pid(w.seg.b.clone(), &mut pts);
            w.pts.extend([a, b]);
        }
        let boxes: Vec<[f64; 4]> = wires.iter().map(|w| w.seg.bbox_f64()).collect();
        let mut contacts: Vec<(usize, usize, Point)> = Vec::new();
        let mut bad = None;
        sweep_pairs(&boxes, |i, j| match contact(&wires[i].seg, &wires[j].seg) {
            Contact::None => {}
            Contact::Cross(p) | Contact::Touch(p) => contacts.push((i, j, p)),
            Contact::Overlap => bad = Some(wires[i].seg.a.clone()),
        });
        if let Some(p) = bad {
            return Err(CurveError::NotTransverse {
                a: "wire".into(),
                b: "wire".into(),
                at: p.to_string(),
            });
        }
        for (i, j, p) in contacts {
            let id = pid(p, &mut pts);
            wires[i].pts.push(id);
            wires[j].pts.push(id);
        }

        // Scaffold rays.
        let mut uf = Uf((0..pts.len()).collect());
        for w in &wires {
            for k in 1..w.pts.len() {
                uf.union(w.pts[0], w.pts[k]);
            }
        }
        let frame_root = {
            let fw = wires.iter().find(|w| w.kind == Kind::Frame).expect("frame wire");
            uf.find(fw.pts[0])
        };
        let mut top: HashMap<usize, usize> = HashMap::new();
        for i in 0..pts.len() {
            let r = uf.find(i);
            if r == frame_root {
                continue;
            }
            let e = top.entry(r).or_insert(i);
            let (p, cur) = (&pts[i], &pts[*e]);
            if p.y > cur.y || (p.y == cur.y && p.x < cur.x) {
                *e = i;
            }
        }
        let mut tops: Vec<usize> = top.into_values().collect();
        tops.sort();
        let n_fixed = wires.len();
        for v in tops {
            let p = pts[v].clone();
            let mut best: Option<(Point, usize)> = None;
            for (wi, w) in wires[..n_fixed].iter().enumerate() {
                let s = &w.seg;
                let hit = if s.is_horizontal() {
                    (s.a.y > p.y && s.min_x() <= &p.x && &p.x <= s.max_x()).then(|| Point::new(p.x.clone(), s.a.y.clone()))
                } else {
                    (s.a.x == p.x && s.min_y() > &p.y).then(|| Point::new(p.x.clone(), s.min_y().clone()))
                };
                if let Some(h) = hit {
                    if best.as_ref().map_or(true, |(b, _)| h.y < b.y) {
                        best = Some((h, wi));
                    }
                }
            }
            let (h, wi) = best.expect("frame lies above every component");
            let hid = pid(h.clone(), &mut pts);
            wires[wi].pts.push(hid);
            wires.push(Wire {
                seg: Seg::new(p, h),
                kind: Kind::Ray,
                pts: vec![v, hid],
            });
        }

        // Symmetric subdivision of glued hole sides.
        let mut extra: Vec<(usize, Point)> = Vec::new();
        let hole_wires: Vec<usize> = (0..wires.len()).filter(|&i| matches!(wires[i].kind, Kind::Hole { .. })).collect();
        for &wi in &hole_wires {
            let Kind::Hole { pair, which } = wires[wi].kind else { unreachable!() };
            let m = &model.pairs[pair].mirror;
            for &p in &wires[wi].pts {
                let img = m.apply(&pts[p]);
                for &wj in &hole_wires {
                    if wires[wj].kind == (Kind::Hole { pair, which: 1 - which }) && wires[wj].seg.contains(&img) {
                        extra.push((wj, img.clone()));
                    }
                }
            }
        }
        for (wj, p) in extra {
            let id = pid(p, &mut pts);
            wires[wj].pts.push(id);
        }

        // Split wires into edges.
        let mut edges = Vec::new();
        let mut edge_kind = Vec::new();
        let mut out = vec![[NONE; 4]; pts.len()];
        let mut wire_edges: Vec<Vec<usize>> = Vec::with_capacity(wires.len());
        for w in wires.iter_mut() {
            let a = w.seg.a.clone();
            w.pts.sort_by(|&i, &j| a.dist(&pts[i]).cmp(&a.dist(&pts[j])));
            w.pts.dedup();
            let mut mine = Vec::new();
            for k in 1..w.pts.len() {
                let (u, v) = (w.pts[k - 1], w.pts[k]);
                let d = Dir::of(&pts[u], &pts[v]).expect("distinct points on a wire");
                let e = edges.len();
                if out[u][di(d)] != NONE || out[v][di(d.opposite())] != NONE {
                    return Err(CurveError::NotTransverse {
                        a: "wire".into(),
                        b: "wire".into(),
                        at: pts[u].to_string(),
                    });
                }
                out[u][di(d)] = 2 * e;
                out[v][di(d.opposite())] = 2 * e + 1;
                edges.push((u, v));
                edge_kind.push(w.kind);
                mine.push(e);
            }
            wire_edges.push(mine);
        }

        let mut cx = Complex {
            pts,
            edges,
            edge_kind,
            out,
            face_of: Vec::new(),
            faces: Vec::new(),
            hole_face: Vec::new(),
            across: Vec::new(),
            canon_edge: Vec::new(),
            canon_vertex: Vec::new(),
            partner: Vec::new(),
            walks: Vec::new(),
            walk_pos: Vec::new(),
            curves_at: Vec::new(),
        };
        cx.trace_faces(model);
        cx.glue(model)?;

        let nh = cx.edges.len() * 2;
        cx.walk_pos = vec![None; nh];
        cx.curves_at = vec![Vec::new(); cx.pts.len()];
        for ci in 0..curves.len() {
            let mut walk = Vec::new();
            for &(_, wi) in &curve_wire[ci] {
                for &e in &wire_edges[wi] {
                    // Wire points were sorted from the segment start, so `2e` runs with the curve.
                    walk.push(2 * e);
                }
            }
            for (k, &h) in walk.iter().enumerate() {
                cx.walk_pos[h] = Some((ci, k, true));
                cx.walk_pos[h ^ 1] = Some((ci, k, false));
                let u = cx.from(h);
                if !cx.curves_at[u].contains(&ci) {
                    cx.curves_at[u].push(ci);
                }
            }
            cx.walks.push(walk);
        }
        Ok(cx)
    }

    fn next(&self, h: usize) -> usize {
        let v = self.to(h);
        let back = self.dir(h).opposite();
        let mut d = back.right();
        for _ in 0..4 {
            let o = self.out[v][di(d)];
            if o != NONE {
                return o;
            }
            d = d.right();
        }
        unreachable!("vertex has an outgoing edge")
    }

    fn trace_faces(&mut self, model: &PlanarModel) {
        let nh = self.edges.len() * 2;
        self.face_of = vec![NONE; nh];
        for h0 in 0..nh {
            if self.face_of[h0] != NONE {
                continue;
            }
            let f = self.faces.len();
            let mut cyc = Vec::new();
            let mut h = h0;
            loop {
                self.face_of[h] = f;
                cyc.push(h);
                h = self.next(h);
                if h == h0 {
                    break;
                }
            }
            self.faces.push(cyc);
        }
        self.hole_face = vec![false; self.faces.len()];
        for h in 0..nh {
            if let Kind::Hole { pair, which } = self.edge_kind[h / 2] {
                let r = model.pairs[pair].hole(which);
                let d = self.dir(h);
                let p = &self.pts[self.from(h)];
                // Counterclockwise around the hole keeps its interior on the left.
                let ccw = match d {
                    Dir::E => p.y == r.y0,
                    Dir::N => p.x == r.x1,
                    Dir::W => p.y == r.y1,
                    Dir::S => p.x == r.x0,
                };
                if ccw {
                    self.hole_face[self.face_of[h]] = true;
                }
            }
        }
    }

    fn glue(&mut self, model: &PlanarModel) -> Result<(), CurveError> {
        let nv = self.pts.len();
        let index: HashMap<&Point, usize> = self.pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        self.partner = vec![NONE; nv];
        self.canon_vertex = (0..nv).collect();
        let mut on_b = vec![false; nv];
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            if let Kind::Hole { pair, which } = self.edge_kind[k] {
                for w in [u, v] {
                    let img = model.pairs[pair].mirror.apply(&self.pts[w]);
                    let j = *index.get(&img).expect("hole sides subdivided symmetrically");
                    self.partner[w] = j;
                    if which == 1 {
                        on_b[w] = true;
                    }
                }
            }
        }
        for w in 0..nv {
            if on_b[w] {
                self.canon_vertex[w] = self.partner[w];
            }
        }
        let ne = self.edges.len();
        self.canon_edge = (0..ne).collect();
        self.across = (0..2 * ne).map(|h| self.face_of[h ^ 1]).collect();
        for k in 0..ne {
            let Kind::Hole { which, .. } = self.edge_kind[k] else { continue };
            let (u, v) = self.edges[k];
            let (pu, pv) = (self.partner[u], self.partner[v]);
            let d = Dir::of(&self.pts[pu], &self.pts[pv]).expect("mirrored edge");
            let h2 = self.out[pu][di(d)];
            let k2 = h2 / 2;
            if which == 1 {
                self.canon_edge[k] = k2;
            }
            let surf = |cx: &Complex, e: usize| if cx.hole_face[cx.face_of[2 * e]] { 2 * e + 1 } else { 2 * e };
            let (s1, s2) = (surf(self, k), surf(self, k2));
            self.across[s1] = self.face_of[s2];
        }
        let v = (0..nv).filter(|&w| self.canon_vertex[w] == w).count() as i64;
        let e = (0..ne).filter(|&k| self.canon_edge[k] == k).count() as i64;
        let f = self.hole_face.iter().filter(|h| !**h).count() as i64;
        let expected = 2 - 2 * model.genus() as i64;
        if v - e + f != expected {
            return Err(CurveError::Topology {
                expected,
                found: v - e + f,
            });
        }
        Ok(())
    }

    fn euler(&self, region: &HashSet<usize>) -> i64 {
        let mut es = HashSet::new();
        let mut vs = HashSet::new();
        for &f in region {
            for &h in &self.faces[f] {
                es.insert(self.canon_edge[h / 2]);
                vs.insert(self.canon_vertex[self.from(h)]);
            }
        }
        vs.len() as i64 - es.len() as i64 + region.len() as i64
    }
}

/// A bigon between curves `a` (side alpha) and `b` (side beta) with corners `x`, `y`.
/// Alpha runs forward along `a` from `x` to `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigon {
    pub a: usize,
    pub b: usize,
    pub x: Point,
    pub y: Point,
    /// Beta runs forward along `b` from `x` to `y`.
    pub b_forward: bool,
    pub faces: usize,
    /// Arcs of other curves inside the bigon with both ends on alpha. Pushing
    /// alpha across clears these too.
    pub alpha_arcs: usize,
    touched: Vec<usize>,
}

impl Bigon {
    /// Crossings removed by pushing alpha across.
    pub fn drop(&self) -> usize {
        2 + 2 * self.alpha_arcs
    }
}

/// Breadth-first fill from `seeds` not crossing `blocked` edges. Stops early
/// once it reaches a face in `stop`.
struct Fill {
    seen: HashSet<usize>,
    queue: VecDeque<usize>,
    failed: bool,
}

impl Fill {
    fn new(seeds: &HashSet<usize>) -> Fill {
        Fill {
            seen: seeds.clone(),
            queue: seeds.iter().copied().collect(),
            failed: false,
        }
    }

    fn done(&self) -> bool {
        self.failed || self.queue.is_empty()
    }

    fn step(&mut self, cx: &Complex, blocked: &HashSet<usize>, stop: &HashSet<usize>) {
        let Some(f) = self.queue.pop_front() else { return };
        for &h in &cx.faces[f] {
            if blocked.contains(&(h / 2)) {
                continue;
            }
            let g = cx.across[h];
            if stop.contains(&g) {
                self.failed = true;
                return;
            }
            if self.seen.insert(g) {
                self.queue.push_back(g);
            }
        }
    }
}

fn cyc_range(start: usize, end: usize, n: usize) -> impl Iterator<Item = usize> {
    let len = (end + n - start) % n;
    let len = if len == 0 { n } else { len };
    (0..len).map(move |i| (start + i) % n)
}

fn detect(cx: &Complex, curves: &[PlCurve]) -> Vec<Bigon> {
    let k = curves.len();
    let mut out = Vec::new();
    // Crossing positions along each walk, keyed by the other curve.
    let mut marks: Vec<HashMap<usize, Vec<(usize, usize)>>> = vec![HashMap::new(); k];
    for (ci, walk) in cx.walks.iter().enumerate() {
        for (pos, &h) in walk.iter().enumerate() {
            let v = cx.from(h);
            for &other in &cx.curves_at[v] {
                if other != ci {
                    marks[ci].entry(other).or_default().push((pos, v));
                }
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let (Some(la), Some(lb)) = (marks[a].get(&b), marks[b].get(&a)) else { continue };
            if la.len() < 2 {
                continue;
            }
            let pos_b: HashMap<usize, usize> = lb.iter().enumerate().map(|(i, &(_, v))| (v, i)).collect();
            for i in 0..la.len() {
                let (ka, x) = la[i];
                let (ka2, y) = la[(i + 1) % la.len()];
                let (px, py) = (pos_b[&x], pos_b[&y]);
                let n = lb.len();
                let mut options = Vec::new();
                if (px + 1) % n == py {
                    options.push(true);
                }
                if (py + 1) % n == px {
                    options.push(false);
                }
                for fwd in options {
                    let alpha: Vec<usize> = cyc_range(ka, ka2, cx.walks[a].len()).map(|p| cx.walks[a][p]).collect();
                    let (s, e) = if fwd { (lb[px].0, lb[py].0) } else { (lb[py].0, lb[px].0) };
                    let mut beta_yx: Vec<usize> = cyc_range(s, e, cx.walks[b].len()).map(|p| cx.walks[b][p]).collect();
                    if fwd {
                        beta_yx = beta_yx.into_iter().rev().map(|h| h ^ 1).collect();
                    }
                    if let Some(bg) = check_bigon(cx, a, b, x, y, &alpha, &beta_yx, fwd) {
                        out.push(bg);
                    }
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn check_bigon(
    cx: &Complex,
    a: usize,
    b: usize,
    x: usize,
    y: usize,
    alpha: &[usize],
    beta_yx: &[usize],
    b_forward: bool,
) -> Option<Bigon> {
    let lp: Vec<usize> = alpha.iter().chain(beta_yx).copied().collect();
    let blocked: HashSet<usize> = lp.iter().map(|h| h / 2).collect();
    let left: HashSet<usize> = lp.iter().map(|&h| cx.face_of[h]).collect();
    let right: HashSet<usize> = lp.iter().map(|&h| cx.face_of[h ^ 1]).collect();
    if !left.is_disjoint(&right) {
        return None;
    }
    let mut fl = Fill::new(&left);
    let mut fr = Fill::new(&right);
    let mut tested = [false, false];
    let mut region = None;
    while region.is_none() && !(tested[0] && tested[1]) {
        if !fl.done() {
            fl.step(cx, &blocked, &right);
        }
        if !fr.done() {
            fr.step(cx, &blocked, &left);
        }
        if fl.failed || fr.failed {
            return None;
        }
        for (side, f) in [(0, &fl), (1, &fr)] {
            if !tested[side] && f.done() {
                tested[side] = true;
                if cx.euler(&f.seen) == 1 {
                    region = Some(f.seen.clone());
                    break;
                }
            }
        }
    }
    let region = region?;

    // Every other arc inside runs alpha to beta, or alpha to alpha.
    let mut alpha_ends = 0;
    let mut side_of: HashMap<usize, u8> = HashMap::new();
    for &h in alpha.iter().skip(1) {
        side_of.insert(cx.from(h), 0);
    }
    for &h in beta_yx.iter().skip(1) {
        side_of.insert(cx.from(h), 1);
    }
    for (&v, &s) in &side_of {
        for &c in &cx.curves_at[v] {
            if c == a || c == b {
                continue;
            }
            let walk = &cx.walks[c];
            let n = walk.len();
            for d in Dir::ALL {
                let h = cx.out[v][di(d)];
                if h == NONE || cx.walk_pos[h].map(|w| w.0) != Some(c) || !region.contains(&cx.face_of[h]) {
                    continue;
                }
                let (_, mut pos, fwd) = cx.walk_pos[h].expect("curve half-edge");
                let end = loop {
                    let w = if fwd { cx.to(walk[pos]) } else { cx.from(walk[pos]) };
                    if let Some(&t) = side_of.get(&w) {
                        break Some(t);
                    }
                    if w == x || w == y {
                        break None;
                    }
                    pos = if fwd { (pos + 1) % n } else { (pos + n - 1) % n };
                };
                match (s, end) {
                    (0, Some(1)) | (1, Some(0)) => {}
                    (0, Some(0)) => alpha_ends += 1,
                    _ => return None,
                }
            }
        }
    }

    let mut touched: HashSet<usize> = region.clone();
    for &h in &lp {
        for v in [cx.from(h), cx.partner[cx.from(h)]] {
            if v == NONE {
                continue;
            }
            for &o in &cx.out[v] {
                if o != NONE {
                    touched.insert(cx.face_of[o]);
                    touched.insert(cx.face_of[o ^ 1]);
                }
            }
        }
    }
    let mut touched: Vec<usize> = touched.into_iter().collect();
    touched.sort();
    Some(Bigon {
        a,
        b,
        x: cx.pts[x].clone(),
        y: cx.pts[y].clone(),
        b_forward,
        faces: region.len(),
        alpha_arcs: alpha_ends / 2,
        touched,
    })
}

/// Bigons that can be removed by pushing one side across the other.
pub fn find_bigons(model: &PlanarModel, curves: &[PlCurve]) -> Result<Vec<Bigon>, CurveError> {
    let cx = Complex::build(model, curves)?;
    Ok(detect(&cx, curves))
}

fn edge_containing(c: &PlCurve, p: &Point) -> usize {
    c.segments()
        .into_iter()
        .find(|(_, s)| s.contains(p))
        .map(|(e, _)| e)
        .expect("crossing lies on the curve")
}

/// Pushes alpha across the bigon to run just outside beta.
/// `delta` must be below the clearance of `b`.
fn remove_bigon(model: &PlanarModel, curves: &mut [PlCurve], bg: &Bigon, delta: &Q) -> Result<(), CurveError> {
    let a = &curves[bg.a];
    let b0 = &curves[bg.b];
    let delta = delta.clone();
    let b = if bg.b_forward { b0.clone() } else { b0.reversed() };

    let i = edge_containing(a, &bg.x);
    let j = edge_containing(a, &bg.y);
    let da_x = a.edge(i).dir();
    let da_y = a.edge(j).dir();
    let p_in = bg.x.step(da_x.opposite(), &delta);
    let q_out = bg.y.step(da_y, &delta);

    let bx = edge_containing(&b, &bg.x);
    let by = edge_containing(&b, &bg.y);
    let db_x = b.edge(bx).dir();
    let u = if db_x.left() == da_x.opposite() { delta.clone() } else { -delta.clone() };

    let mut vs = vec![Vertex::at(p_in)];
    let nb = b.len();
    let y_after_x_b = bx == by && b.vertices[bx].p.dist(&bg.x) < b.vertices[bx].p.dist(&bg.y);
    if !y_after_x_b {
        let mut k = b.next(bx);
        loop {
            vs.push(b.offset_vertex(k, &u));
            if k == by {
                break;
            }
            k = (k + 1) % nb;
        }
    }
    vs.push(Vertex::at(q_out));
    let na = a.len();
    let y_after_x_a = i == j && a.vertices[i].p.dist(&bg.x) < a.vertices[i].p.dist(&bg.y);
    if i != j || y_after_x_a {
        let mut k = a.next(j);
        loop {
            vs.push(a.vertices[k].clone());
            if k == i {
                break;
            }
            k = (k + 1) % na;
        }
    }
    let new_a = PlCurve::new(a.name.clone(), vs).simplified();
    new_a.validate(model)?;
    curves[bg.a] = new_a;
    Ok(())
}

/// Removes bigons until none remain.
pub fn minimal_position(model: &PlanarModel, curves: &[PlCurve]) -> Result<Vec<PlCurve>, CurveError> {
    reduce(model, curves, &mut [], None)
}

/// As [`minimal_position`], removing bigons in a random order.
pub fn minimal_position_seeded(model: &PlanarModel, curves: &[PlCurve], seed: u64) -> Result<Vec<PlCurve>, CurveError> {
    reduce(model, curves, &mut [], Some(ChaCha8Rng::seed_from_u64(seed)))
}

/// As [`minimal_position`], keeping `carried` (which never moves) clear of the
/// pushed pieces and respacing it along with the curves.
pub(crate) fn minimal_position_carrying(
    model: &PlanarModel,
    curves: &[PlCurve],
    carried: &mut [PlCurve],
) -> Result<Vec<PlCurve>, CurveError> {
    reduce(model, curves, carried, None)
}

fn reduce(
    model: &PlanarModel,
    curves: &[PlCurve],
    carried: &mut [PlCurve],
    mut rng: Option<ChaCha8Rng>,
) -> Result<Vec<PlCurve>, CurveError> {
    let k = curves.len();
    let mut all: Vec<PlCurve> = curves.iter().chain(carried.iter()).cloned().collect();
    let mut before = crossing_points(&all[..k])?.len();
    loop {
        let cx = Complex::build(model, &all[..k])?;
        let mut found = detect(&cx, &all[..k]);
        if found.is_empty() {
            carried.clone_from_slice(&all[k..]);
            all.truncate(k);
            return Ok(all);
        }
        match rng.as_mut() {
            Some(r) => found.shuffle(r),
            None => found.sort_by_key(|b| std::cmp::Reverse(b.drop())),
        }
        let mut used: HashSet<usize> = HashSet::new();
        let mut chosen = Vec::new();
        for bg in found {
            if bg.touched.iter().any(|f| used.contains(f)) {
                continue;
            }
            used.extend(bg.touched.iter().copied());
            chosen.push(bg);
            if rng.is_some() {
                break;
            }
        }
        let n: usize = chosen.iter().map(Bigon::drop).sum();
        // Pieces pushed in the same round stay at least half this apart.
        let delta = system_clearance(model, &all, k)? / q(4);
        for bg in &chosen {
            remove_bigon(model, &mut all[..k], bg, &delta)?;
        }
        let after = crossing_points(&all[..k])?.len();
        if after + n != before {
            return Err(CurveError::Curve {
                curve: all[chosen[0].a].name.clone(),
                message: format!("bigon removal changed crossings from {before} to {after}"),
            });
        }
        respace(model, &mut all);
        before = after;
    }
}
