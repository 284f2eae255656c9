use std::collections::HashMap;
use std::fmt::Write;

use super::{DiagramError, Passage, StackedDiagram};

const HEADER: &str = "stacked-diagram v1";

/// Whitespace-separated tokens of a line with their 1-based columns, comments stripped.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_count(line: usize, toks: &[(usize, &str)], what: &str) -> Result<usize, DiagramError> {
    if toks.len() != 2 {
        let col = toks.get(2).map_or(toks[0].0, |t| t.0);
        return Err(syntax(line, col, format!("expected `{what} <number>`")));
    }
    toks[1]
        .1
        .parse()
        .map_err(|_| syntax(line, toks[1].0, format!("invalid {what} count `{}`", toks[1].1)))
}

/// Parses a `stacked-diagram v1` document.
pub fn parse_diagram(text: &str) -> Result<StackedDiagram, DiagramError> {
    let mut seen_header = false;
    let mut genus = None;
    let mut k: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    // (curve number, line, tokens) resolved after all crossings are known.
    let mut curve_lines: Vec<(usize, usize, Vec<(usize, String)>)> = Vec::new();
    let mut salient_line: Option<(usize, Vec<(usize, String)>)> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        if !seen_header {
            let got: Vec<&str> = toks.iter().map(|t| t.1).collect();
            if got.join(" ") != HEADER {
                return Err(syntax(line, toks[0].0, format!("expected header `{HEADER}`")));
            }
            seen_header = true;
            continue;
        }
        match toks[0].1 {
            "genus" => {
                if genus.is_some() {
                    return Err(syntax(line, toks[0].0, "duplicate genus line"));
                }
                genus = Some(parse_count(line, &toks, "genus")?);
            }
            "curves" => {
                if k.is_some() {
                    return Err(syntax(line, toks[0].0, "duplicate curves line"));
                }
                k = Some(parse_count(line, &toks, "curves")?);
            }
            "crossing" => {
                if toks.len() < 2 {
                    return Err(syntax(line, toks[0].0, "expected at least one crossing name"));
                }
                for &(col, name) in &toks[1..] {
                    if name.contains('.') || name.contains(':') {
                        return Err(syntax(line, col, format!("invalid crossing name `{name}`")));
                    }
                    if index.insert(name.to_string(), names.len()).is_some() {
                        return Err(syntax(line, col, format!("duplicate crossing `{name}`")));
                    }
                    names.push(name.to_string());
                }
            }
            "curve" => {
                let Some(&(col, label)) = toks.get(1) else {
                    return Err(syntax(line, toks[0].0, "expected `curve <n>:`"));
                };
                let Some(num) = label.strip_suffix(':') else {
                    return Err(syntax(line, col, "expected `:` after curve number"));
                };
                let num: usize = num
                    .parse()
                    .map_err(|_| syntax(line, col, format!("invalid curve number `{num}`")))?;
                let rest = toks[2..].iter().map(|&(c, t)| (c, t.to_string())).collect();
                curve_lines.push((num, line, rest));
            }
            "salient" => {
                if salient_line.is_some() {
                    return Err(syntax(line, toks[0].0, "duplicate salient line"));
                }
                let rest = toks[1..].iter().map(|&(c, t)| (c, t.to_string())).collect();
                salient_line = Some((line, rest));
            }
            other => {
                return Err(syntax(line, toks[0].0, format!("unknown directive `{other}`")));
            }
        }
    }
    if !seen_header {
        return Err(syntax(1, 1, format!("expected header `{HEADER}`")));
    }
    let last_line = text.lines().count().max(1);
    let Some(k) = k else {
        return Err(syntax(last_line, 1, "missing `curves` line"));
    };
    let mut curves: Vec<Option<Vec<Passage>>> = vec![None; k];
    for (num, line, toks) in curve_lines {
        if num == 0 || num > k {
            return Err(syntax(line, 1, format!("curve number {num} outside 1..{k}")));
        }
        if curves[num - 1].is_some() {
            return Err(syntax(line, 1, format!("duplicate curve {num}")));
        }
        let mut passages = Vec::with_capacity(toks.len());
        for (col, tok) in toks {
            let Some((name, port)) = tok.rsplit_once('.') else {
                return Err(syntax(line, col, format!("expected `<crossing>.<port>`, found `{tok}`")));
            };
            let Some(&x) = index.get(name) else {
                return Err(syntax(line, col, format!("unknown crossing `{name}`")));
            };
            let port: u8 = match port.parse() {
                Ok(p) if p < 4 => p,
                _ => return Err(syntax(line, col + name.len() + 1, format!("port must be 0..3, found `{port}`"))),
            };
            passages.push(Passage::new(x, port));
        }
        curves[num - 1] = Some(passages);
    }
    let mut out = Vec::with_capacity(k);
    for (i, c) in curves.into_iter().enumerate() {
        match c {
            Some(c) => out.push(c),
            None => return Err(syntax(last_line, 1, format!("missing curve {}", i + 1))),
        }
    }
    let salient = match salient_line {
        None => None,
        Some((line, toks)) => {
            let mut s = Vec::with_capacity(toks.len());
            for (col, name) in toks {
                match index.get(&name) {
                    Some(&x) => s.push(x),
                    None => return Err(syntax(line, col, format!("unknown crossing `{name}`"))),
                }
            }
            Some(s)
        }
    };
    StackedDiagram::new(out, names, genus, salient)
}

pub(super) fn serialize(d: &StackedDiagram) -> String {
    let mut s = String::new();
    writeln!(s, "{HEADER}").unwrap();
    if let Some(g) = d.genus_declared() {
        writeln!(s, "genus {g}").unwrap();
    }
    writeln!(s, "curves {}", d.curve_count()).unwrap();
    for name in d.names() {
        writeln!(s, "crossing {name}").unwrap();
    }
    for (i, c) in d.curves().iter().enumerate() {
        write!(s, "curve {}:", i + 1).unwrap();
        for p in c {
            write!(s, " {}.{}", d.name(p.crossing), p.entry).unwrap();
        }
        s.push('\n');
    }
    if let Some(sal) = d.salient_designation() {
        s.push_str("salient");
        for &x in sal {
            write!(s, " {}", d.name(x)).unwrap();
        }
        s.push('\n');
    }
    s
}
