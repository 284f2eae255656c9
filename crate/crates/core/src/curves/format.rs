//! `plcurves v1` text format.
//!
//! ```text
//! plcurves v1
//! frame 0 -10 40 10
//! pair 9 -1 11 1 mirror x=13
//! curve m1: 8 -2; 12 -2; 12 2; 8 2
//! curve l1: 15 0; 11 0 jump
//! arc 22 1 22 4
//! ```
//!
//! A `pair` line gives one hole and the reflection producing its partner. A
//! vertex marked `jump` leaves through the hole side it sits on; the next
//! vertex is the glued image. Coordinates are integers, `n/d` or decimals.

use std::fmt::Write as _;

use super::geom::{fmt_q, parse_q, Point, Seg, Q};
use super::model::{HolePair, Mirror, PlanarModel, Rect};
use super::plcurve::{PlCurve, Vertex};
use super::CurveError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub model: PlanarModel,
    pub curves: Vec<PlCurve>,
    pub arc: Option<Seg>,
}

impl CurveFile {
    pub fn curve(&self, name: &str) -> Option<&PlCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("plcurves v1\n");
        let f = &self.model.frame;
        let _ = writeln!(s, "frame {} {} {} {}", fmt_q(&f.x0), fmt_q(&f.y0), fmt_q(&f.x1), fmt_q(&f.y1));
        for p in &self.model.pairs {
            let m = match &p.mirror {
                Mirror::X(c) => format!("x={}", fmt_q(c)),
                Mirror::Y(c) => format!("y={}", fmt_q(c)),
            };
            let _ = writeln!(
                s,
                "pair {} {} {} {} mirror {m}",
                fmt_q(&p.a.x0),
                fmt_q(&p.a.y0),
                fmt_q(&p.a.x1),
                fmt_q(&p.a.y1)
            );
        }
        for c in &self.curves {
            let pts: Vec<String> = c
                .vertices
                .iter()
                .map(|v| {
                    let j = if v.jump { " jump" } else { "" };
                    format!("{} {}{j}", fmt_q(&v.p.x), fmt_q(&v.p.y))
                })
                .collect();
            let _ = writeln!(s, "curve {}: {}", c.name, pts.join("; "));
        }
        if let Some(a) = &self.arc {
            let _ = writeln!(s, "arc {} {} {} {}", fmt_q(&a.a.x), fmt_q(&a.a.y), fmt_q(&a.b.x), fmt_q(&a.b.y));
        }
        s
    }
}

fn nums(toks: &[&str], line: usize) -> Result<Vec<Q>, CurveError> {
    toks.iter()
        .map(|t| {
            parse_q(t).ok_or_else(|| CurveError::Syntax {
                line,
                message: format!("bad number `{t}`"),
            })
        })
        .collect()
}

pub fn parse_curve_file(text: &str) -> Result<CurveFile, CurveError> {
    let mut frame = None;
    let mut pairs = Vec::new();
    let mut curves: Vec<PlCurve> = Vec::new();
    let mut arc = None;
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |m: String| CurveError::Syntax { line, message: m };
        if !seen_header {
            if body != "plcurves v1" {
                return Err(err(format!("expected `plcurves v1`, found `{body}`")));
            }
            seen_header = true;
            continue;
        }
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match kw {
            "frame" | "arc" => {
                let v = nums(&rest.split_whitespace().collect::<Vec<_>>(), line)?;
                if v.len() != 4 {
                    return Err(err(format!("`{kw}` takes four numbers")));
                }
                if kw == "frame" {
                    if frame.is_some() {
                        return Err(err("duplicate frame".into()));
                    }
                    frame = Some(Rect::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()));
                } else {
                    let a = Point::new(v[0].clone(), v[1].clone());
                    let b = Point::new(v[2].clone(), v[3].clone());
                    if a == b || (a.x != b.x && a.y != b.y) {
                        return Err(err("arc must be a nondegenerate axis-parallel segment".into()));
                    }
                    arc = Some(Seg::new(a, b));
                }
            }
            "pair" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 6 || toks[4] != "mirror" {
                    return Err(err("expected `pair x0 y0 x1 y1 mirror x=c`".into()));
                }
                let v = nums(&toks[..4], line)?;
                let (axis, c) = toks[5].split_once('=').ok_or_else(|| err("mirror needs `x=c` or `y=c`".into()))?;
                let c = parse_q(c).ok_or_else(|| err(format!("bad number `{c}`")))?;
                let mirror = match axis {
                    "x" => Mirror::X(c),
                    "y" => Mirror::Y(c),
                    _ => return Err(err("mirror needs `x=c` or `y=c`".into())),
                };
                let r = Rect::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
                pairs.push(HolePair::new(r, mirror));
            }
            "curve" => {
                let (name, pts) = rest.split_once(':').ok_or_else(|| err("expected `curve name: ...`".into()))?;
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(format!("bad curve name `{name}`")));
                }
                if curves.iter().any(|c| c.name == name) {
                    return Err(err(format!("duplicate curve `{name}`")));
                }
                let mut vs = Vec::new();
                for item in pts.split(';') {
                    let toks: Vec<&str> = item.split_whitespace().collect();
                    let (coords, jump) = match toks.as_slice() {
                        [x, y] => ([*x, *y], false),
                        [x, y, "jump"] => ([*x, *y], true),
                        _ => return Err(err(format!("bad vertex `{}`", item.trim()))),
                    };
                    let v = nums(&coords, line)?;
                    vs.push(Vertex {
                        p: Point::new(v[0].clone(), v[1].clone()),
                        jump,
                    });
                }
                curves.push(PlCurve::new(name, vs));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    if !seen_header {
        return Err(CurveError::Syntax {
            line: 1,
            message: "missing `plcurves v1` header".into(),
        });
    }
    let frame = frame.ok_or(CurveError::Syntax {
        line: 1,
        message: "missing frame".into(),
    })?;
    let model = PlanarModel::new(frame, pairs)?;
    for c in &curves {
        c.validate(&model)?;
    }
    Ok(CurveFile { model, curves, arc })
}
