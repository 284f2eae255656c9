//! The salient set: solutions of the grading system projected onto the salient chords.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::{DiagramError, StackedDiagram};
use crate::grading::{build_grading_system_with, SignConvention};
use crate::lattice::{solve_sparse, AffineLattice, LatticeError, ModulusConstraint, SparseSolution};

/// Moduli are searched up to this bound when the system has no integer solution.
pub const MODULUS_SEARCH_LIMIT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SalientLattice {
    Integral(AffineLattice),
    /// No integer solution. `modulus` is the smallest admissible `m > 1`, and
    /// `lattice` the projected mod-`m` solution set (it contains `m Z^k`).
    Modular {
        constraint: ModulusConstraint,
        modulus: Option<u64>,
        lattice: Option<AffineLattice>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalientSet {
    pub k: usize,
    pub n_variables: usize,
    pub n_equations: usize,
    pub system_rank: usize,
    /// Free parameters of the full solution set (integral case).
    pub n_parameters: usize,
    pub lattice: SalientLattice,
}

#[derive(Debug, thiserror::Error)]
pub enum SalientError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("salient set has no integer solutions")]
    Inconsistent,
}

impl SalientSet {
    pub fn is_integral(&self) -> bool {
        matches!(self.lattice, SalientLattice::Integral(_))
    }

    pub fn integral_lattice(&self) -> Option<&AffineLattice> {
        match &self.lattice {
            SalientLattice::Integral(l) => Some(l),
            SalientLattice::Modular { .. } => None,
        }
    }

    /// Dimension of the projected lattice (the mod-`m` lattice in the modular case).
    pub fn salient_rank(&self) -> usize {
        match &self.lattice {
            SalientLattice::Integral(l) => l.rank(),
            SalientLattice::Modular { lattice, .. } => lattice.as_ref().map_or(0, AffineLattice::rank),
        }
    }

    /// Plain-text report with a fixed field order.
    pub fn report(&self) -> String {
        let mut s = String::new();
        writeln!(s, "curves: {}", self.k).unwrap();
        writeln!(s, "variables: {}", self.n_variables).unwrap();
        writeln!(s, "equations: {}", self.n_equations).unwrap();
        writeln!(s, "system rank: {}", self.system_rank).unwrap();
        match &self.lattice {
            SalientLattice::Integral(l) => {
                writeln!(s, "integer solutions: yes").unwrap();
                writeln!(s, "solution parameters: {}", self.n_parameters).unwrap();
                writeln!(s, "salient rank: {}", l.rank()).unwrap();
                writeln!(s, "parametric form: {}", parametric_lines(l)).unwrap();
                writeln!(s, "canonical lattice: {l}").unwrap();
            }
            SalientLattice::Modular {
                constraint,
                modulus,
                lattice,
            } => {
                writeln!(s, "integer solutions: no").unwrap();
                writeln!(s, "modulus constraint: {constraint}").unwrap();
                match (modulus, lattice) {
                    (Some(m), Some(l)) => {
                        writeln!(s, "smallest modulus: {m}").unwrap();
                        writeln!(s, "canonical lattice mod {m}: {l}").unwrap();
                    }
                    _ => writeln!(s, "smallest modulus: none").unwrap(),
                }
            }
        }
        s
    }
}

/// Builds, solves and projects the grading system of `d`.
pub fn salient_set(d: &StackedDiagram) -> Result<SalientSet, SalientError> {
    salient_set_with(d, SignConvention::Standard)
}

pub fn salient_set_with(d: &StackedDiagram, convention: SignConvention) -> Result<SalientSet, SalientError> {
    let coords: Vec<usize> = d.salient_chords()?.into_iter().map(|c| c.index()).collect();
    let gs = build_grading_system_with(d, convention);
    let sys = gs.to_sparse();
    let sol = solve_sparse(&sys)?;
    let lattice = project_solution(&sys, &sol, &coords)?;
    Ok(SalientSet {
        k: d.curve_count(),
        n_variables: gs.n_vars(),
        n_equations: gs.equations.len(),
        system_rank: sol.rank(),
        n_parameters: if sol.is_consistent() { sol.n_params() } else { 0 },
        lattice,
    })
}

/// Projects a solved system onto `coords`, falling back to the smallest modulus.
pub fn project_solution(
    sys: &crate::lattice::SparseSystem,
    sol: &SparseSolution,
    coords: &[usize],
) -> Result<SalientLattice, LatticeError> {
    if let Some(l) = sol.project(coords) {
        return Ok(SalientLattice::Integral(l));
    }
    let constraint = sol.constraint().clone();
    let modulus = constraint.smallest_modulus(MODULUS_SEARCH_LIMIT);
    let lattice = match modulus {
        Some(m) => {
            let lifted = solve_sparse(&sys.modular_lift(m))?;
            lifted.project(coords).map(|l| {
                let mut gens = l.basis().to_vec();
                for i in 0..coords.len() {
                    let mut e = vec![BigInt::zero(); coords.len()];
                    e[i] = BigInt::from(m);
                    gens.push(e);
                }
                AffineLattice::new(l.particular().to_vec(), gens)
            })
        }
        None => None,
    };
    Ok(SalientLattice::Modular {
        constraint,
        modulus,
        lattice,
    })
}

/// Rotation witnessing equality: `a` equals `b` with `b`'s coordinate `i + r`
/// placed at position `i`. Returns the smallest such `r`.
pub fn compare(a: &SalientSet, b: &SalientSet) -> Option<usize> {
    if a.k != b.k {
        return None;
    }
    let k = a.k;
    let same_lattice = |la: &AffineLattice, lb: &AffineLattice| -> Option<usize> {
        if la.rank() != lb.rank() {
            return None;
        }
        (0..k).find(|&r| {
            let perm: Vec<usize> = (0..k).map(|i| (i + k - r) % k).collect();
            lb.permute(&perm) == *la
        })
    };
    match (&a.lattice, &b.lattice) {
        (SalientLattice::Integral(la), SalientLattice::Integral(lb)) => same_lattice(la, lb),
        (
            SalientLattice::Modular {
                constraint: ca,
                modulus: ma,
                lattice: la,
            },
            SalientLattice::Modular {
                constraint: cb,
                modulus: mb,
                lattice: lb,
            },
        ) => {
            if ma != mb || (1..=MODULUS_SEARCH_LIMIT).any(|m| ca.admits(m) != cb.admits(m)) {
                return None;
            }
            match (la, lb) {
                (Some(la), Some(lb)) => same_lattice(la, lb),
                (None, None) => Some(0),
                _ => None,
            }
        }
        _ => None,
    }
}

/// `x_1 = 1 + 2*t_1 - t_3; x_2 = ...` over the canonical basis.
pub fn parametric_form(s: &SalientSet) -> Result<String, SalientError> {
    match s.integral_lattice() {
        Some(l) => Ok(parametric_lines(l)),
        None => Err(SalientError::Inconsistent),
    }
}

fn parametric_lines(l: &AffineLattice) -> String {
    let mut parts = Vec::with_capacity(l.dim());
    for i in 0..l.dim() {
        let mut expr = String::new();
        let c = &l.particular()[i];
        if !c.is_zero() {
            expr.push_str(&c.to_string());
        }
        for (j, col) in l.basis().iter().enumerate() {
            let a = &col[i];
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let term = if mag.is_one() {
                format!("t_{}", j + 1)
            } else {
                format!("{mag}*t_{}", j + 1)
            };
            match (expr.is_empty(), a.is_negative()) {
                (true, false) => expr.push_str(&term),
                (true, true) => write!(expr, "-{term}").unwrap(),
                (false, false) => write!(expr, " + {term}").unwrap(),
                (false, true) => write!(expr, " - {term}").unwrap(),
            }
        }
        if expr.is_empty() {
            expr.push('0');
        }
        parts.push(format!("x_{} = {expr}", i + 1));
    }
    parts.join("; ")
}
