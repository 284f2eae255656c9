//! Line-oriented move scripts.
//!
//! ```text
//! move r2 face=f3 a=2:5 b=3:1
//! move r2- face=f7
//! move r3 face=f12
//! move slide a=3 b=7 arc=f1,f4,f9
//! move finger a=2:3 path=f1,f4
//! move retract x9,x10
//! ```
//!
//! Faces, curves and arcs are 1-based; `c:i` is the arc of curve `c` leaving its
//! `i`-th passage.

use std::collections::HashMap;
use std::fmt;

use super::{finger_move, r2_insert, r2_remove, r3, retract, slide, ArcRef, MoveError};
use crate::diagram::StackedDiagram;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveCommand {
    R2Insert { face: usize, a: ArcRef, b: ArcRef },
    R2Remove { face: usize },
    R3 { face: usize },
    Slide { a: usize, b: usize, path: Vec<usize> },
    Finger { arc: ArcRef, path: Vec<usize> },
    Retract { crossings: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn one_based(s: &str, what: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n - 1),
        _ => Err(format!("invalid {what} `{s}`")),
    }
}

fn face(s: &str) -> Result<usize, String> {
    let n = s.strip_prefix('f').ok_or_else(|| format!("expected face `f<n>`, found `{s}`"))?;
    one_based(n, "face")
}

fn faces(s: &str) -> Result<Vec<usize>, String> {
    s.split(',').map(face).collect()
}

fn arc(s: &str) -> Result<ArcRef, String> {
    let (c, i) = s.split_once(':').ok_or_else(|| format!("expected arc `<curve>:<arc>`, found `{s}`"))?;
    Ok(ArcRef {
        curve: one_based(c, "curve")?,
        index: one_based(i, "arc")?,
    })
}

fn parse_line(toks: &[&str]) -> Result<MoveCommand, String> {
    let (&kind, rest) = toks.split_first().ok_or("missing move kind")?;
    if kind == "retract" {
        let crossings: Vec<String> = rest.iter().flat_map(|t| t.split(',')).filter(|t| !t.is_empty()).map(str::to_string).collect();
        return Ok(MoveCommand::Retract { crossings });
    }
    let mut kv = HashMap::new();
    for t in rest {
        let (k, v) = t.split_once('=').ok_or_else(|| format!("expected `key=value`, found `{t}`"))?;
        if kv.insert(k, v).is_some() {
            return Err(format!("duplicate key `{k}`"));
        }
    }
    let get = |k: &str| kv.get(k).copied().ok_or_else(|| format!("`{kind}` needs `{k}=`"));
    let allowed: &[&str] = match kind {
        "r2" => &["face", "a", "b"],
        "r2-" | "r3" => &["face"],
        "slide" => &["a", "b", "arc"],
        "finger" => &["a", "path"],
        other => return Err(format!("unknown move `{other}`")),
    };
    if let Some(k) = kv.keys().find(|k| !allowed.contains(k)) {
        return Err(format!("`{kind}` does not take `{k}=`"));
    }
    Ok(match kind {
        "r2" => MoveCommand::R2Insert {
            face: face(get("face")?)?,
            a: arc(get("a")?)?,
            b: arc(get("b")?)?,
        },
        "r2-" => MoveCommand::R2Remove { face: face(get("face")?)? },
        "r3" => MoveCommand::R3 { face: face(get("face")?)? },
        "slide" => MoveCommand::Slide {
            a: one_based(get("a")?, "curve")?,
            b: one_based(get("b")?, "curve")?,
            path: faces(get("arc")?)?,
        },
        _ => MoveCommand::Finger {
            arc: arc(get("a")?)?,
            path: faces(get("path")?)?,
        },
    })
}

pub fn parse_script(text: &str) -> Result<Vec<MoveCommand>, ScriptError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let err = |message: String| ScriptError { line: i + 1, message };
        if toks[0] != "move" {
            return Err(err(format!("expected `move`, found `{}`", toks[0])));
        }
        out.push(parse_line(&toks[1..]).map_err(err)?);
    }
    Ok(out)
}

pub fn apply_command(d: &StackedDiagram, cmd: &MoveCommand) -> Result<StackedDiagram, MoveError> {
    match cmd {
        MoveCommand::R2Insert { face, a, b } => r2_insert(d, *face, *a, *b).map(|r| r.diagram),
        MoveCommand::R2Remove { face } => r2_remove(d, *face),
        MoveCommand::R3 { face } => r3(d, *face),
        MoveCommand::Slide { a, b, path } => slide(d, *a, *b, path).map(|r| r.diagram),
        MoveCommand::Finger { arc, path } => finger_move(d, *arc, path).map(|r| r.diagram),
        MoveCommand::Retract { crossings } => retract(d, crossings),
    }
}

impl fmt::Display for MoveCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arc = |a: &ArcRef| format!("{}:{}", a.curve + 1, a.index + 1);
        let path = |p: &[usize]| p.iter().map(|x| format!("f{}", x + 1)).collect::<Vec<_>>().join(",");
        match self {
            MoveCommand::R2Insert { face, a, b } => write!(f, "move r2 face=f{} a={} b={}", face + 1, arc(a), arc(b)),
            MoveCommand::R2Remove { face } => write!(f, "move r2- face=f{}", face + 1),
            MoveCommand::R3 { face } => write!(f, "move r3 face=f{}", face + 1),
            MoveCommand::Slide { a, b, path: p } => write!(f, "move slide a={} b={} arc={}", a + 1, b + 1, path(p)),
            MoveCommand::Finger { arc: a, path: p } => write!(f, "move finger a={} path={}", arc(a), path(p)),
            MoveCommand::Retract { crossings } => write!(f, "move retract {}", crossings.join(",")),
        }
    }
}
