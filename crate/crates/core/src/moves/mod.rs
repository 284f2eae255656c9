//! Local rewrites on stacked diagrams.
//!
//! All insertions are instances of one construction: a finger pushed from an
//! arc of curve `a` through a chain of faces, crossing one wall arc between
//! consecutive faces, optionally ending in a band sum with a parallel copy of a
//! curve `b` bounding the last face. New crossings are appended after the
//! existing ones, so removing them again restores the original serialization.

mod random;
mod script;

use std::collections::HashMap;

pub use random::{random_move, MoveKind};
pub use script::{apply_command, parse_script, MoveCommand, ScriptError};

use crate::diagram::{Dart, DiagramError, Labeling, Passage, StackedDiagram};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("face f{0} does not exist")]
    NoSuchFace(usize),
    #[error("curve {0} does not exist")]
    NoSuchCurve(usize),
    #[error("arc {curve}:{arc} does not exist")]
    NoSuchArc { curve: usize, arc: usize },
    #[error("arc {curve}:{arc} does not bound face f{face}")]
    ArcNotOnFace { curve: usize, arc: usize, face: usize },
    #[error("arcs lie on the same curve {0}")]
    SameCurve(usize),
    #[error("face f{0} is not a bigon between two distinct crossings")]
    NotBigon(usize),
    #[error("face f{0} is not a triangle on three distinct curves")]
    NotTriangle(usize),
    #[error("triangle f{face} has equal corner signs under labeling {labeling}")]
    ExcludedSignPattern { face: usize, labeling: usize },
    #[error("removal would orphan the salient crossing {0}")]
    OrphansSalient(String),
    #[error("removal would leave curve {0} without crossings")]
    EmptiesCurve(usize),
    #[error("move would change the genus from {before} to {after}")]
    GenusChanged { before: usize, after: usize },
    #[error("ill-formed path: {0}")]
    BadPath(String),
    #[error("curves {0} and {1} intersect; slides need disjoint curves")]
    CurvesIntersect(usize, usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Arc `index` of `curve` runs from passage `index` to passage `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcRef {
    pub curve: usize,
    pub index: usize,
}

/// The arc a face side runs along, and whether the walk follows the curve's orientation.
pub fn arc_of_dart(d: &StackedDiagram, dart: Dart) -> (ArcRef, bool) {
    let u = d.port_use(dart.crossing, dart.port);
    if u.entry {
        let len = d.curve(u.curve).len();
        (
            ArcRef {
                curve: u.curve,
                index: (u.index + len - 1) % len,
            },
            false,
        )
    } else {
        (
            ArcRef {
                curve: u.curve,
                index: u.index,
            },
            true,
        )
    }
}

/// Face across the side `dart`.
pub fn face_across(d: &StackedDiagram, dart: Dart) -> usize {
    d.face_left_of(d.arc_end(dart))
}

/// First side of `face` lying on the given arc.
pub fn side_on_arc(d: &StackedDiagram, face: usize, arc: ArcRef) -> Option<Dart> {
    let f = d.face(face);
    (0..f.len()).map(|i| f.side(i)).find(|&s| arc_of_dart(d, s).0 == arc)
}

/// A rewritten diagram and the crossings the move created.
#[derive(Clone, Debug)]
pub struct MoveResult {
    pub diagram: StackedDiagram,
    pub new_crossings: Vec<usize>,
}

/// `x<n>` with `n` past `counter`, avoiding every existing name.
fn fresh_name(existing: &[String], counter: &mut usize) -> String {
    loop {
        *counter += 1;
        let n = format!("x{counter}");
        if !existing.contains(&n) {
            return n;
        }
    }
}

/// Port of the second strand given `cross(d_a, d_b) > 0` with `a` entering at port 0.
fn b_entry(positive: bool) -> u8 {
    if positive {
        1
    } else {
        3
    }
}

#[derive(Default)]
struct Insertions {
    /// Inserted right before passage `j` of a curve.
    before: HashMap<(usize, usize), Vec<Passage>>,
    /// Inserted right after passage `j`, ahead of `in_arc`.
    after: HashMap<(usize, usize), Vec<Passage>>,
    /// Inserted inside arc `j` (between passage `j` and `j + 1`).
    in_arc: HashMap<(usize, usize), Vec<Passage>>,
}

impl Insertions {
    fn apply(mut self, curves: &[Vec<Passage>]) -> Vec<Vec<Passage>> {
        curves
            .iter()
            .enumerate()
            .map(|(c, ps)| {
                let mut out = Vec::with_capacity(ps.len());
                for (j, p) in ps.iter().enumerate() {
                    out.extend(self.before.remove(&(c, j)).unwrap_or_default());
                    out.push(*p);
                    out.extend(self.after.remove(&(c, j)).unwrap_or_default());
                    out.extend(self.in_arc.remove(&(c, j)).unwrap_or_default());
                }
                out
            })
            .collect()
    }
}

/// Band target of a slide: a side of the last face lying on curve `b`.
struct Band {
    side: Dart,
}

fn finger(
    d: &StackedDiagram,
    base: Dart,
    walls: &[Dart],
    band: Option<Band>,
) -> Result<MoveResult, MoveError> {
    let (a_arc, a_fwd) = arc_of_dart(d, base);
    let a = a_arc.curve;
    let mut seen_arcs = vec![a_arc];
    for w in walls {
        let (arc, _) = arc_of_dart(d, *w);
        if arc.curve == a {
            return Err(MoveError::BadPath(format!("wall lies on the pushed curve {}", a + 1)));
        }
        if seen_arcs.contains(&arc) {
            return Err(MoveError::BadPath(format!("arc {}:{} is crossed twice", arc.curve + 1, arc.index + 1)));
        }
        seen_arcs.push(arc);
    }
    let mut names = d.names().to_vec();
    let mut counter = names.len();
    let mut new_crossings = Vec::new();
    let mut ins = Insertions::default();

    // Ports are assigned as if a ran along the base walk; a is flipped at the end.
    // Outbound and return crossings per wall, in finger order.
    let mut outbound = Vec::new();
    let mut inbound = Vec::new();
    for w in walls {
        let (arc, e_fwd) = arc_of_dart(d, *w);
        let p = names.len();
        names.push(fresh_name(d.names(), &mut counter));
        let q = names.len();
        names.push(fresh_name(d.names(), &mut counter));
        new_crossings.extend([p, q]);
        // Outbound: cross(right(t), t) = +1; return: cross(left(t), t) = -1.
        let pe = Passage::new(p, b_entry(e_fwd));
        let qe = Passage::new(q, b_entry(!e_fwd));
        // Walking the wall with the current face on the left meets Q first.
        let seq = if e_fwd { vec![qe, pe] } else { vec![pe, qe] };
        ins.in_arc.insert((arc.curve, arc.index), seq);
        outbound.push(Passage::new(p, 0));
        inbound.push(Passage::new(q, 0));
    }

    let mut tip = Vec::new();
    if let Some(Band { side }) = band {
        let (b_arc, b_fwd) = arc_of_dart(d, side);
        let b = b_arc.curve;
        let b_curve = d.curve(b);
        let m = b_curve.len();
        // b' sits on the left of the side's walk; relative to b's own orientation
        // that is the left iff the walk follows b.
        let left_of_b = b_fwd;
        // Along the base walk, b' is traversed in the side's walk direction.
        let along_b = b_fwd;
        let mut copies = vec![0usize; m];
        for (j, pb) in b_curve.iter().enumerate() {
            let x = names.len();
            names.push(fresh_name(d.names(), &mut counter));
            new_crossings.push(x);
            copies[j] = x;
            let other = d.port_use(pb.crossing, (pb.entry + 1) % 4);
            let e_entry = if other.entry { (pb.entry + 1) % 4 } else { (pb.entry + 3) % 4 };
            let e_enters_p3 = e_entry == (pb.entry + 3) % 4;
            let e_passage = Passage::new(x, e_entry);
            let e_index = d.port_use(pb.crossing, e_entry).index;
            let e_curve = d.port_use(pb.crossing, e_entry).curve;
            let slot = if e_enters_p3 == left_of_b {
                ins.before.entry((e_curve, e_index)).or_default()
            } else {
                ins.after.entry((e_curve, e_index)).or_default()
            };
            slot.push(e_passage);
        }
        // Cut point lies on arc b_arc.index; walk b' from just past it.
        let order: Vec<usize> = if along_b {
            (1..=m).map(|s| (b_arc.index + s) % m).collect()
        } else {
            (0..m).map(|s| (b_arc.index + m - s) % m).collect()
        };
        for j in order {
            let pb = b_curve[j];
            let entry = if along_b { pb.entry } else { pb.exit() };
            tip.push(Passage::new(copies[j], entry));
        }
    }

    // Finger and tip along a in base-walk order.
    let mut seq: Vec<Passage> = outbound.clone();
    seq.extend(tip);
    seq.extend(inbound.iter().rev().copied());
    if !a_fwd {
        seq.reverse();
        for p in &mut seq {
            *p = Passage::new(p.crossing, p.exit());
        }
    }
    ins.in_arc.insert((a_arc.curve, a_arc.index), seq);

    let curves = ins.apply(d.curves());
    let salient = d.salient_designation().map(<[usize]>::to_vec);
    let out = StackedDiagram::new(curves, names, d.genus_declared(), salient)?;
    if out.genus() != d.genus() {
        return Err(MoveError::GenusChanged {
            before: d.genus(),
            after: out.genus(),
        });
    }
    Ok(MoveResult {
        diagram: out,
        new_crossings,
    })
}

fn check_face(d: &StackedDiagram, face: usize) -> Result<(), MoveError> {
    if face >= d.faces().len() {
        return Err(MoveError::NoSuchFace(face + 1));
    }
    Ok(())
}

fn check_arc(d: &StackedDiagram, arc: ArcRef) -> Result<(), MoveError> {
    if arc.curve >= d.curve_count() {
        return Err(MoveError::NoSuchCurve(arc.curve + 1));
    }
    if arc.index >= d.curve(arc.curve).len() {
        return Err(MoveError::NoSuchArc {
            curve: arc.curve + 1,
            arc: arc.index + 1,
        });
    }
    Ok(())
}

fn side_of(d: &StackedDiagram, face: usize, arc: ArcRef) -> Result<Dart, MoveError> {
    check_face(d, face)?;
    check_arc(d, arc)?;
    side_on_arc(d, face, arc).ok_or(MoveError::ArcNotOnFace {
        curve: arc.curve + 1,
        arc: arc.index + 1,
        face: face + 1,
    })
}

/// Walls between consecutive faces of `path`, avoiding the listed curves.
fn walls_along(d: &StackedDiagram, path: &[usize], avoid: &[usize]) -> Result<Vec<Dart>, MoveError> {
    if path.is_empty() {
        return Err(MoveError::BadPath("empty face path".into()));
    }
    for (i, &f) in path.iter().enumerate() {
        check_face(d, f)?;
        if path[..i].contains(&f) {
            return Err(MoveError::BadPath(format!("face f{} repeats", f + 1)));
        }
    }
    path.windows(2)
        .map(|w| {
            let f = d.face(w[0]);
            (0..f.len())
                .map(|i| f.side(i))
                .find(|&s| face_across(d, s) == w[1] && !avoid.contains(&arc_of_dart(d, s).0.curve))
                .ok_or_else(|| MoveError::BadPath(format!("faces f{} and f{} share no usable side", w[0] + 1, w[1] + 1)))
        })
        .collect()
}

/// Pushes arc `a` across arc `b`, both sides of `face`, creating a bigon.
pub fn r2_insert(d: &StackedDiagram, face: usize, a: ArcRef, b: ArcRef) -> Result<MoveResult, MoveError> {
    let sa = side_of(d, face, a)?;
    let sb = side_of(d, face, b)?;
    if a.curve == b.curve {
        return Err(MoveError::SameCurve(a.curve + 1));
    }
    finger(d, sa, &[sb], None)
}

/// Pushes a finger of `arc` from `path[0]` through the faces of `path`.
pub fn finger_move(d: &StackedDiagram, arc: ArcRef, path: &[usize]) -> Result<MoveResult, MoveError> {
    let walls = walls_along(d, path, &[arc.curve])?;
    let base = side_of(d, path[0], arc)?;
    finger(d, base, &walls, None)
}

/// Slides curve `a` over the disjoint curve `b` along the face path from a side
/// of `a` in `path[0]` to a side of `b` in the last face.
pub fn slide(d: &StackedDiagram, a: usize, b: usize, path: &[usize]) -> Result<MoveResult, MoveError> {
    for c in [a, b] {
        if c >= d.curve_count() {
            return Err(MoveError::NoSuchCurve(c + 1));
        }
    }
    if a == b {
        return Err(MoveError::SameCurve(a + 1));
    }
    if !d.crossings_between(a, b).is_empty() {
        return Err(MoveError::CurvesIntersect(a + 1, b + 1));
    }
    let walls = walls_along(d, path, &[a, b])?;
    let on_curve = |face: usize, c: usize| {
        let f = d.face(face);
        (0..f.len())
            .map(|i| f.side(i))
            .find(|&s| arc_of_dart(d, s).0.curve == c)
            .ok_or_else(|| MoveError::BadPath(format!("face f{} does not touch curve {}", face + 1, c + 1)))
    };
    let base = on_curve(path[0], a)?;
    let side = on_curve(path[path.len() - 1], b)?;
    finger(d, base, &walls, Some(Band { side }))
}

/// The two crossings of a bigon face.
fn bigon_crossings(d: &StackedDiagram, face: usize) -> Option<(usize, usize)> {
    let f = d.face(face);
    if f.len() != 2 {
        return None;
    }
    let (p, q) = (f.corners()[0].crossing, f.corners()[1].crossing);
    (p != q).then_some((p, q))
}

/// Removes a bigon face. A designated corner moves to the far corner of an
/// adjacent bigon on the same pair of curves, when there is one.
pub fn r2_remove(d: &StackedDiagram, face: usize) -> Result<StackedDiagram, MoveError> {
    check_face(d, face)?;
    let (p, q) = bigon_crossings(d, face).ok_or(MoveError::NotBigon(face + 1))?;
    let pair = d.crossing_curves(p);
    let mut salient = d.salient_designation().map(<[usize]>::to_vec);
    if let Some(s) = salient.as_mut() {
        for x in s.iter_mut().filter(|x| **x == p || **x == q) {
            let partner = (0..d.faces().len())
                .filter(|&g| g != face)
                .filter_map(|g| bigon_crossings(d, g))
                .find_map(|(u, v)| match (u, v) {
                    (u, v) if (u == p || u == q) && v != p && v != q => Some(v),
                    (u, v) if (v == p || v == q) && u != p && u != q => Some(u),
                    _ => None,
                })
                .filter(|&r| d.crossing_curves(r) == pair);
            *x = partner.ok_or_else(|| MoveError::OrphansSalient(d.name(*x).to_string()))?;
        }
    }
    remove_crossings(d, &[p, q], salient)
}

fn remove_crossings(d: &StackedDiagram, gone: &[usize], salient: Option<Vec<usize>>) -> Result<StackedDiagram, MoveError> {
    let mut remap = vec![usize::MAX; d.crossing_count()];
    let mut names = Vec::with_capacity(d.crossing_count());
    for x in 0..d.crossing_count() {
        if !gone.contains(&x) {
            remap[x] = names.len();
            names.push(d.name(x).to_string());
        }
    }
    let mut curves = Vec::with_capacity(d.curve_count());
    for (c, ps) in d.curves().iter().enumerate() {
        let kept: Vec<Passage> = ps
            .iter()
            .filter(|p| !gone.contains(&p.crossing))
            .map(|p| Passage::new(remap[p.crossing], p.entry))
            .collect();
        if kept.is_empty() {
            return Err(MoveError::EmptiesCurve(c + 1));
        }
        curves.push(kept);
    }
    let salient = salient.map(|s| s.into_iter().map(|x| remap[x]).collect());
    let out = StackedDiagram::new(curves, names, d.genus_declared(), salient)?;
    if out.genus() != d.genus() {
        return Err(MoveError::GenusChanged {
            before: d.genus(),
            after: out.genus(),
        });
    }
    Ok(out)
}

/// Undoes a finger move by removing its bigons from the tip inwards.
/// `crossings` are the names the finger created, in creation order.
pub fn retract(d: &StackedDiagram, crossings: &[String]) -> Result<StackedDiagram, MoveError> {
    if crossings.len() % 2 != 0 {
        return Err(MoveError::BadPath("retraction needs crossing pairs".into()));
    }
    let mut cur = d.clone();
    for pair in crossings.chunks(2).rev() {
        let find = |n: &str| {
            cur.crossing_by_name(n)
                .ok_or_else(|| MoveError::BadPath(format!("unknown crossing `{n}`")))
        };
        let (p, q) = (find(&pair[0])?, find(&pair[1])?);
        let face = (0..cur.faces().len())
            .find(|&f| matches!(bigon_crossings(&cur, f), Some((u, v)) if (u, v) == (p, q) || (u, v) == (q, p)))
            .ok_or_else(|| MoveError::BadPath(format!("{} and {} do not bound a bigon", pair[0], pair[1])))?;
        cur = r2_remove(&cur, face)?;
    }
    Ok(cur)
}

/// Moves one strand across the crossing of the other two at a triangle face.
pub fn r3(d: &StackedDiagram, face: usize) -> Result<StackedDiagram, MoveError> {
    check_face(d, face)?;
    let f = d.face(face);
    if f.len() != 3 || f.visits_crossing_twice().is_some() {
        return Err(MoveError::NotTriangle(face + 1));
    }
    let arcs: Vec<ArcRef> = (0..3).map(|i| arc_of_dart(d, f.side(i)).0).collect();
    if arcs[0].curve == arcs[1].curve || arcs[1].curve == arcs[2].curve || arcs[0].curve == arcs[2].curve {
        return Err(MoveError::NotTriangle(face + 1));
    }
    for l in 0..d.curve_count() {
        let signs: Vec<i8> = f.corners().iter().map(|&c| d.quadrant_sign(c, Labeling(l))).collect();
        if signs.iter().all(|&s| s == signs[0]) {
            return Err(MoveError::ExcludedSignPattern {
                face: face + 1,
                labeling: l,
            });
        }
    }
    let mut curves = d.curves().to_vec();
    for arc in arcs {
        let c = &mut curves[arc.curve];
        let len = c.len();
        c.swap(arc.index, (arc.index + 1) % len);
    }
    let out = StackedDiagram::new(
        curves,
        d.names().to_vec(),
        d.genus_declared(),
        d.salient_designation().map(<[usize]>::to_vec),
    )?;
    if out.genus() != d.genus() {
        return Err(MoveError::GenusChanged {
            before: d.genus(),
            after: out.genus(),
        });
    }
    Ok(out)
}
