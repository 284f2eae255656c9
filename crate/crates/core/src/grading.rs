//! Grading equations: one per face per labeling, over global chord variables.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;

use crate::diagram::{Chord, Corner, Direction, Labeling, StackedDiagram};
use crate::lattice::{SparseRow, SparseSystem};

/// Which diagonal of a crossing counts as positive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// Quadrant `q` is positive iff port `q` lies on the under strand.
    #[default]
    Standard,
    Flipped,
}

/// `sum coeff * var = rhs`, tagged with the labeling and face it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEquation {
    pub labeling: usize,
    pub face: usize,
    /// Sorted by variable index, zero coefficients removed.
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

impl LinearEquation {
    pub fn coefficient(&self, var: usize) -> i64 {
        self.terms
            .iter()
            .find(|(v, _)| *v == var)
            .map_or(0, |(_, c)| *c)
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty() && self.rhs == 0
    }
}

/// Equation of an arbitrary corner multiset under a labeling.
pub fn corner_equation(
    d: &StackedDiagram,
    corners: &[Corner],
    l: Labeling,
    convention: SignConvention,
) -> (Vec<(usize, i64)>, i64) {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    let mut rhs = 0;
    for &c in corners {
        let mut s = i64::from(d.quadrant_sign(c, l));
        if convention == SignConvention::Flipped {
            s = -s;
        }
        *acc.entry(d.active_chord(c.crossing, l).index()).or_insert(0) += s;
        rhs += s;
    }
    (acc.into_iter().filter(|(_, c)| *c != 0).collect(), rhs)
}

pub fn face_equation(d: &StackedDiagram, face: usize, l: Labeling) -> LinearEquation {
    face_equation_with(d, face, l, SignConvention::Standard)
}

pub fn face_equation_with(
    d: &StackedDiagram,
    face: usize,
    l: Labeling,
    convention: SignConvention,
) -> LinearEquation {
    let (terms, rhs) = corner_equation(d, d.face(face).corners(), l, convention);
    LinearEquation {
        labeling: l.0,
        face,
        terms,
        rhs,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingSystem {
    pub variables: Vec<String>,
    pub equations: Vec<LinearEquation>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct GradingParseError {
    pub line: usize,
    pub message: String,
}

pub fn variable_name(d: &StackedDiagram, c: Chord) -> String {
    let suffix = match c.direction {
        Direction::Forward => 'f',
        Direction::Backward => 'b',
    };
    format!("c{}{}", d.name(c.crossing), suffix)
}

pub fn build_grading_system(d: &StackedDiagram) -> GradingSystem {
    build_grading_system_with(d, SignConvention::Standard)
}

pub fn build_grading_system_with(d: &StackedDiagram, convention: SignConvention) -> GradingSystem {
    let variables = d.chords().into_iter().map(|c| variable_name(d, c)).collect();
    let mut equations = Vec::with_capacity(d.curve_count() * d.faces().len());
    for l in 0..d.curve_count() {
        for f in 0..d.faces().len() {
            equations.push(face_equation_with(d, f, Labeling(l), convention));
        }
    }
    GradingSystem {
        variables,
        equations,
    }
}

impl GradingSystem {
    pub fn n_vars(&self) -> usize {
        self.variables.len()
    }

    /// Sparse integer system; trivially satisfied equations are dropped.
    pub fn to_sparse(&self) -> SparseSystem {
        let mut sys = SparseSystem::new(self.variables.len());
        for e in &self.equations {
            if e.is_trivial() {
                continue;
            }
            sys.push(SparseRow::new(
                e.terms.iter().map(|&(v, c)| (v, BigInt::from(c))).collect(),
                BigInt::from(e.rhs),
            ));
        }
        sys
    }

    /// Deterministic `grading-system v1` text.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        s.push_str("grading-system v1\n");
        write!(s, "variables {}:", self.variables.len()).unwrap();
        for v in &self.variables {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
        for e in &self.equations {
            write!(s, "eq {}/f{}:", e.labeling, e.face + 1).unwrap();
            if e.terms.is_empty() {
                s.push_str(" 0");
            }
            for &(v, c) in &e.terms {
                let sign = if c < 0 { '-' } else { '+' };
                if c.abs() == 1 {
                    write!(s, " {sign}{}", self.variables[v]).unwrap();
                } else {
                    write!(s, " {sign}{}{}", c.abs(), self.variables[v]).unwrap();
                }
            }
            writeln!(s, " = {}", e.rhs).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<GradingSystem, GradingParseError> {
        let err = |line: usize, message: String| GradingParseError { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "grading-system v1")) => {}
            Some((n, _)) => return Err(err(n, "expected header `grading-system v1`".into())),
            None => return Err(err(1, "empty document".into())),
        }
        let Some((vline, vtext)) = lines.next() else {
            return Err(err(1, "missing variables line".into()));
        };
        let Some(rest) = vtext.strip_prefix("variables ") else {
            return Err(err(vline, "expected `variables <n>: ...`".into()));
        };
        let Some((count, names)) = rest.split_once(':') else {
            return Err(err(vline, "expected `:` after variable count".into()));
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| err(vline, format!("invalid variable count `{count}`")))?;
        let variables: Vec<String> = names.split_whitespace().map(str::to_string).collect();
        if variables.len() != count {
            return Err(err(vline, format!("declared {count} variables, listed {}", variables.len())));
        }
        let index: BTreeMap<&str, usize> = variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut equations = Vec::new();
        for (n, line) in lines {
            let Some(body) = line.strip_prefix("eq ") else {
                return Err(err(n, "expected `eq`".into()));
            };
            let Some((origin, eqn)) = body.split_once(':') else {
                return Err(err(n, "expected `:` after equation origin".into()));
            };
            let Some((lab, face)) = origin.split_once('/') else {
                return Err(err(n, "expected `<labeling>/f<face>`".into()));
            };
            let labeling: usize = lab.trim().parse().map_err(|_| err(n, format!("invalid labeling `{lab}`")))?;
            let face: usize = face
                .trim()
                .strip_prefix('f')
                .and_then(|f| f.parse().ok())
                .filter(|&f: &usize| f >= 1)
                .ok_or_else(|| err(n, format!("invalid face `{face}`")))?;
            let Some((lhs, rhs)) = eqn.split_once('=') else {
                return Err(err(n, "expected `=`".into()));
            };
            let rhs: i64 = rhs.trim().parse().map_err(|_| err(n, format!("invalid rhs `{}`", rhs.trim())))?;
            let mut terms = Vec::new();
            let lhs = lhs.trim();
            if lhs != "0" {
                for tok in lhs.split_whitespace() {
                    let (sign, body) = match tok.split_at(1) {
                        ("+", b) => (1, b),
                        ("-", b) => (-1, b),
                        _ => return Err(err(n, format!("term `{tok}` lacks a sign"))),
                    };
                    let digits = body.chars().take_while(char::is_ascii_digit).count();
                    let coeff: i64 = if digits == 0 {
                        1
                    } else {
                        body[..digits].parse().map_err(|_| err(n, format!("invalid coefficient in `{tok}`")))?
                    };
                    let name = &body[digits..];
                    let Some(&v) = index.get(name) else {
                        return Err(err(n, format!("unknown variable `{name}`")));
                    };
                    terms.push((v, sign * coeff));
                }
            }
            equations.push(LinearEquation {
                labeling,
                face: face - 1,
                terms,
                rhs,
            });
        }
        Ok(GradingSystem {
            variables,
            equations,
        })
    }
}
