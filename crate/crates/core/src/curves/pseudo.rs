//! Pseudocoronation diagrams of elliptic surfaces with knot surgery.
//!
//! The twenty Lefschetz cycles are `B4..B0` twice and their images under the
//! knot monodromy twice, built from nested copies of `c5` on the genus-2 model
//! so that all of them are pairwise transverse. They are then routed over a
//! new tube and closed up with two more curves: a belt around one foot of the
//! tube (circle 22) and a belt twist of a copy of circle 21 (circle 20).

use std::collections::HashMap;

use super::arrangement::{crossing_points, order_along, to_stacked_diagram, Embedded};
use super::format::{parse_curve_file, CurveFile};
use super::geom::{q, ratio, Point, Seg, Q};
use super::model::PlanarModel;
use super::plcurve::PlCurve;
use super::respace::respace;
use super::twist::{apply_word, clearance, twist_joint, TwistWord};
use super::{complex::minimal_position_carrying, tube::find_transversal_arc, tube::tube_substitute, tube::Tube, CurveError};
use crate::diagram::StackedDiagram;

pub const BASE_CURVES: &str = include_str!("../../data/genus2_chain.plc");
pub const MONODROMY: &str = include_str!("../../data/monodromy.txt");
pub const DEFAULT_ORDERING: &str = include_str!("../../data/ordering.txt");

pub const CIRCLES: usize = 22;

/// Where a circle comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Circle {
    /// `B_i` on nested copy `copy`, optionally pushed through the monodromy.
    Lefschetz { base: usize, phi: bool, copy: usize },
    /// Belt twist of a copy of circle 21.
    BeltTwist,
    /// Belt around the tube foot.
    Belt,
}

/// Circle `k` (1-based).
pub fn circle(k: usize) -> Circle {
    match k {
        1..=10 => Circle::Lefschetz {
            base: 4 - (k - 1) % 5,
            phi: false,
            copy: k - 1,
        },
        11..=19 => Circle::Lefschetz {
            base: 4 - (k - 11) % 5,
            phi: true,
            copy: k - 1,
        },
        20 => Circle::BeltTwist,
        21 => Circle::Lefschetz {
            base: 0,
            phi: true,
            copy: 19,
        },
        22 => Circle::Belt,
        _ => panic!("circle index out of range"),
    }
}

/// Twist-curve dictionary and knot presets.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub aliases: Vec<(String, String)>,
    pub derived: Vec<(String, String, TwistWord)>,
    pub knots: Vec<(String, TwistWord)>,
}

impl Monodromy {
    pub fn parse(text: &str) -> Result<Monodromy, CurveError> {
        let mut m = Monodromy {
            aliases: Vec::new(),
            derived: Vec::new(),
            knots: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |s: &str| CurveError::Syntax {
                line: i + 1,
                message: s.to_string(),
            };
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks[0] {
                "alias" if toks.len() == 3 => m.aliases.push((toks[1].into(), toks[2].into())),
                "derive" if toks.len() >= 4 => {
                    m.derived.push((toks[1].into(), toks[2].into(), TwistWord::parse(&toks[3..].join(" "))?))
                }
                "knot" => {
                    let (name, word) = body["knot".len()..].split_once(':').ok_or_else(|| err("expected `knot name: word`"))?;
                    m.knots.push((name.trim().into(), TwistWord::parse(word)?));
                }
                _ => return Err(err("expected `alias`, `derive` or `knot`")),
            }
        }
        Ok(m)
    }

    pub fn bundled() -> Monodromy {
        Monodromy::parse(MONODROMY).expect("bundled monodromy data parses")
    }

    pub fn knot(&self, name: &str) -> Option<&TwistWord> {
        self.knots.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    pub fn knot_names(&self) -> Vec<&str> {
        self.knots.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Twist curves named as in the words.
    pub fn dictionary(&self, base: &CurveFile) -> Result<Vec<PlCurve>, CurveError> {
        let mut dict: Vec<PlCurve> = base.curves.clone();
        for (alias, target) in &self.aliases {
            let c = find(&dict, target)?;
            dict.push(PlCurve::new(alias.clone(), c.vertices.clone()));
        }
        for (name, from, word) in &self.derived {
            let c = find(&dict, from)?.clone();
            let img = apply_word(&base.model, &dict, word, std::slice::from_ref(&c), &[])?.remove(0);
            dict.push(PlCurve::new(name.clone(), img.vertices));
        }
        Ok(dict)
    }
}

fn find<'a>(cs: &'a [PlCurve], name: &str) -> Result<&'a PlCurve, CurveError> {
    cs.iter().find(|c| c.name == name).ok_or_else(|| CurveError::UnknownCurve(name.to_string()))
}

/// Parses an ordering table: the 22 circle numbers in stack order.
pub fn parse_ordering(text: &str) -> Result<Vec<usize>, CurveError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        for tok in raw.split('#').next().unwrap_or("").split_whitespace() {
            let n: usize = tok.parse().map_err(|_| CurveError::Syntax {
                line: i + 1,
                message: format!("bad circle number `{tok}`"),
            })?;
            out.push(n);
        }
    }
    let mut sorted = out.clone();
    sorted.sort();
    if sorted != (1..=CIRCLES).collect::<Vec<_>>() {
        return Err(CurveError::Syntax {
            line: 1,
            message: format!("ordering must list circles 1..{CIRCLES} once each"),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Pseudocoronation {
    pub model: PlanarModel,
    /// Curves in stack order.
    pub curves: Vec<PlCurve>,
    /// Stack position to circle number.
    pub ordering: Vec<usize>,
    pub arc: Seg,
    pub tube: Tube,
    pub embedded: Embedded,
    pub diagram: StackedDiagram,
}

impl Pseudocoronation {
    pub fn curve_file(&self) -> CurveFile {
        CurveFile {
            model: self.model.clone(),
            curves: self.curves.clone(),
            arc: Some(self.arc.clone()),
        }
    }
}

/// Nested copy `j` of a square curve, grown by `2j/25`.
pub fn nested_copy(c: &PlCurve, j: usize) -> PlCurve {
    let grow = ratio(2 * j as i64, 25);
    let xs: Vec<&Q> = c.vertices.iter().map(|v| &v.p.x).collect();
    let ys: Vec<&Q> = c.vertices.iter().map(|v| &v.p.y).collect();
    let cx = (xs.iter().copied().max().unwrap() + xs.iter().copied().min().unwrap()) / q(2);
    let cy = (ys.iter().copied().max().unwrap() + ys.iter().copied().min().unwrap()) / q(2);
    let vertices = c
        .vertices
        .iter()
        .map(|v| {
            let sx = if v.p.x > cx { &grow } else { &-&grow };
            let sy = if v.p.y > cy { &grow } else { &-&grow };
            super::plcurve::Vertex::at(Point::new(&v.p.x + sx, &v.p.y + sy))
        })
        .collect();
    PlCurve::new(format!("{}_{j}", c.name), vertices)
}

/// Builds the diagram for a monodromy word.
pub fn build_pseudocoronation(word: &TwistWord, ordering: &[usize], designate: bool) -> Result<Pseudocoronation, CurveError> {
    let base = parse_curve_file(BASE_CURVES)?;
    let mono = Monodromy::bundled();
    let dict = mono.dictionary(&base)?;
    let names: Vec<&str> = dict.iter().map(|c| c.name.as_str()).collect();
    word.resolve(&names)?;
    let model = base.model.clone();
    let idx = |n: &str| dict.iter().position(|c| c.name == n).ok_or_else(|| CurveError::UnknownCurve(n.into()));
    let chain: Vec<usize> = ["m1", "l1", "n1", "l2"].iter().map(|n| idx(n)).collect::<Result<_, _>>()?;

    // copy j -> (base index, phi)
    let mut role = vec![(0usize, false); 20];
    for k in (1..=21).filter(|&k| k != 20) {
        if let Circle::Lefschetz { base, phi, copy } = circle(k) {
            role[copy] = (base, phi);
        }
    }
    // The tube goes in first, across the untouched nested copies. The twist
    // centres avoid the arc, so twisting afterwards gives the same curves.
    // Names sharing a curve (aliases) share one centre.
    let mut centres: Vec<usize> = Vec::new();
    let mut centre_of: HashMap<usize, usize> = HashMap::new();
    for k in chain.iter().copied().chain(word.letters.iter().map(|l| idx(&l.curve)).collect::<Result<Vec<_>, _>>()?) {
        let slot = match centres.iter().position(|&c| dict[c].vertices == dict[k].vertices) {
            Some(p) => p,
            None => {
                centres.push(k);
                centres.len() - 1
            }
        };
        centre_of.insert(k, 20 + slot);
    }
    let c5 = &dict[idx("m2")?];
    let mut sys: Vec<PlCurve> = (0..20).map(|j| nested_copy(c5, j)).collect();
    sys.extend(centres.iter().map(|&k| dict[k].clone()));
    let listed: Vec<usize> = (0..20).collect();
    let arc = find_transversal_arc(&model, &sys, &listed)?;
    let (model, mut sys, tube) = tube_substitute(&model, &arc, &sys)?;
    let centre = |k: usize| centre_of[&k];

    // B_i = t_{c_{5-i}} ... t_{c_4}(c_5): twist about c4 first.
    for t in (1..=4usize).rev() {
        let targets: Vec<usize> = (0..20).filter(|&j| role[j].0 >= 5 - t).collect();
        twist_step(&model, &mut sys, centre(chain[t - 1]), &targets, 1)?;
    }
    let phi_targets: Vec<usize> = (0..20).filter(|&j| role[j].1).collect();
    for l in &word.letters {
        twist_step(&model, &mut sys, centre(idx(&l.curve)?), &phi_targets, if l.inverse { -1 } else { 1 })?;
    }
    let cur = sys[..20].to_vec();

    let belt = tube.belt(&model, "b1");
    let c21 = &cur[19];
    let mut others: Vec<&PlCurve> = cur.iter().collect();
    others.push(&belt);
    let others_wo: Vec<&PlCurve> = others.iter().copied().filter(|c| !std::ptr::eq(*c, c21)).collect();
    let u = clearance(&model, c21, &others_wo)? / q(4);
    let mut push = c21.offset(&u);
    push.name = "g1".into();
    let g1 = twist_joint(&model, &belt, std::slice::from_ref(&push), &others, 1)?.remove(0);

    let mut by_circle: HashMap<usize, PlCurve> = HashMap::new();
    for k in 1..=CIRCLES {
        let c = match circle(k) {
            Circle::Lefschetz { copy, .. } => {
                let mut c = cur[copy].clone();
                c.name = format!("c{k}");
                c
            }
            Circle::BeltTwist => PlCurve::new("c20", g1.vertices.clone()),
            Circle::Belt => PlCurve::new("c22", belt.vertices.clone()),
        };
        by_circle.insert(k, c);
    }
    let curves: Vec<PlCurve> = ordering.iter().map(|k| by_circle[k].clone()).collect();
    let embedded = to_stacked_diagram(&model, &curves)?;
    let diagram = if designate {
        let s = staircase(&model, &curves, &embedded, tube.pair)?;
        embedded.diagram.with_salient(Some(s))?
    } else {
        embedded.diagram.clone()
    };
    Ok(Pseudocoronation {
        model,
        curves,
        ordering: ordering.to_vec(),
        arc,
        tube,
        embedded,
        diagram,
    })
}

/// Twists the copies `targets` (the first 20 entries) about `sys[centre]`,
/// the other copies held fixed, then respaces everything and puts the copies
/// back in minimal position.
fn twist_step(model: &PlanarModel, sys: &mut [PlCurve], centre: usize, targets: &[usize], sign: i8) -> Result<(), CurveError> {
    let ts: Vec<PlCurve> = targets.iter().map(|&j| sys[j].clone()).collect();
    let bg: Vec<&PlCurve> = (0..20).filter(|j| !targets.contains(j)).map(|j| &sys[j]).collect();
    let out = twist_joint(model, &sys[centre], &ts, &bg, sign)?;
    for (k, &j) in targets.iter().enumerate() {
        sys[j] = out[k].clone();
    }
    respace(model, sys);
    let (copies, centres) = sys.split_at_mut(20);
    let m = minimal_position_carrying(model, copies, centres)?;
    copies.clone_from_slice(&m);
    Ok(())
}

/// For each consecutive pair, the first crossing with the next curve met along
/// the lower one after it leaves the tube (from its first vertex if it never
/// uses the tube).
pub fn staircase(model: &PlanarModel, curves: &[PlCurve], emb: &Embedded, tube_pair: usize) -> Result<Vec<usize>, CurveError> {
    let k = curves.len();
    let xs = crossing_points(curves)?;
    let by_point: HashMap<&Point, usize> = emb.crossings.iter().enumerate().map(|(x, c)| (&c.p, x)).collect();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let j = (i + 1) % k;
        let c = &curves[i];
        let n = c.len();
        let start = (0..n)
            .find(|&v| {
                let p = c.prev(v);
                c.vertices[p].jump && model.hole_side_of(&c.vertices[p].p).map(|h| h.pair) == Some(tube_pair)
            })
            .unwrap_or(0);
        let mut order = order_along(c, i, &xs);
        // Rotate so edges from `start` come first.
        let key = |x: &usize| {
            let e = xs[*x].edge_of(i);
            (e + n - start) % n
        };
        order.sort_by_key(key);
        let hit = order
            .into_iter()
            .find(|&x| {
                let cr = &xs[x];
                (cr.a == i && cr.b == j) || (cr.a == j && cr.b == i)
            })
            .ok_or(crate::diagram::DiagramError::NoConsecutiveCrossing(i + 1, j + 1))?;
        out.push(by_point[&xs[hit].p]);
    }
    Ok(out)
}
