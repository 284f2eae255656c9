//! Sparse integer elimination for large, mostly unimodular systems.
//!
//! Unit pivots are eliminated first (Markowitz-style, shortest row first); the
//! residual rows are handed to the dense HNF solver. Solutions are kept
//! implicitly and materialized as affine forms only for the coordinates asked for.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::affine::{solvable_moduli, solve_integer, AffineLattice, ModulusConstraint, Solution};
use super::{IntMatrix, LatticeError};

/// One equation `sum terms = rhs`, terms sorted by variable with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRow {
    pub terms: Vec<(usize, BigInt)>,
    pub rhs: BigInt,
}

impl SparseRow {
    /// Normalizes arbitrary term lists: sorts, merges duplicates, drops zeros.
    pub fn new(mut terms: Vec<(usize, BigInt)>, rhs: BigInt) -> Self {
        terms.sort_by_key(|(v, _)| *v);
        let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(terms.len());
        for (v, c) in terms {
            match merged.last_mut() {
                Some((lv, lc)) if *lv == v => *lc += c,
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        SparseRow { terms: merged, rhs }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    pub n_vars: usize,
    pub rows: Vec<SparseRow>,
}

impl SparseSystem {
    pub fn new(n_vars: usize) -> Self {
        SparseSystem {
            n_vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: SparseRow) {
        debug_assert!(row.terms.iter().all(|(v, _)| *v < self.n_vars));
        self.rows.push(row);
    }

    pub fn to_dense(&self) -> (IntMatrix, Vec<BigInt>) {
        let mut a = IntMatrix::zeros(self.rows.len(), self.n_vars);
        for (i, r) in self.rows.iter().enumerate() {
            for (v, c) in &r.terms {
                a.set(i, *v, c.clone());
            }
        }
        (a, self.rows.iter().map(|r| r.rhs.clone()).collect())
    }

    /// The system `A x = b (mod m)` written over the integers with one slack
    /// variable per row, appended after the original variables.
    pub fn modular_lift(&self, m: u64) -> SparseSystem {
        let mut out = SparseSystem::new(self.n_vars + self.rows.len());
        let m = BigInt::from(m);
        for (i, r) in self.rows.iter().enumerate() {
            let mut terms = r.terms.clone();
            terms.push((self.n_vars + i, m.clone()));
            out.rows.push(SparseRow {
                terms,
                rhs: r.rhs.clone(),
            });
        }
        out
    }
}

/// Affine function of the free parameters: `constant + sum coeff * t_param`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Form {
    constant: BigInt,
    terms: Vec<(usize, BigInt)>,
}

impl Form {
    fn param(p: usize) -> Form {
        Form {
            constant: BigInt::zero(),
            terms: vec![(p, BigInt::one())],
        }
    }

    /// `self += k * other`
    fn add_scaled(&mut self, other: &Form, k: &BigInt) {
        self.constant += &other.constant * k;
        self.terms = merge_scaled(&self.terms, &other.terms, k);
    }
}

/// `a + k * b` on sorted sparse vectors.
fn merge_scaled(a: &[(usize, BigInt)], b: &[(usize, BigInt)], k: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * k));
            j += 1;
        } else {
            let c = &a[i].1 + &b[j].1 * k;
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `var = sign * (rhs - sum terms)`, recorded when `var` was eliminated.
#[derive(Clone, Debug)]
struct Pivot {
    sign: BigInt,
    rest: Vec<(usize, BigInt)>,
    rhs: BigInt,
}

#[derive(Clone, Debug)]
enum VarRole {
    Eliminated(usize),
    Residual(usize),
    Free(usize),
}

/// Result of [`solve_sparse`].
#[derive(Clone, Debug)]
pub struct SparseSolution {
    n_vars: usize,
    rank: usize,
    constraint: ModulusConstraint,
    consistent: bool,
    pivots: Vec<Pivot>,
    roles: Vec<VarRole>,
    /// Residual particular solution and kernel (rows = residual vars).
    residual: Option<AffineLattice>,
    n_params: usize,
}

impl SparseSolution {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn constraint(&self) -> &ModulusConstraint {
        &self.constraint
    }

    /// Number of free integer parameters of the solution set.
    pub fn n_params(&self) -> usize {
        self.n_params
    }

    /// Solution set restricted to `coords`, canonicalized. `None` if inconsistent.
    pub fn project(&self, coords: &[usize]) -> Option<AffineLattice> {
        if !self.consistent {
            return None;
        }
        let mut memo: HashMap<usize, Form> = HashMap::new();
        let forms: Vec<Form> = coords.iter().map(|&c| self.form(c, &mut memo)).collect();
        let particular: Vec<BigInt> = forms.iter().map(|f| f.constant.clone()).collect();
        let mut gens: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); coords.len()]; self.n_params];
        for (i, f) in forms.iter().enumerate() {
            for (p, c) in &f.terms {
                gens[*p][i] = c.clone();
            }
        }
        gens.retain(|g| g.iter().any(|x| !x.is_zero()));
        Some(AffineLattice::new(particular, gens))
    }

    /// Full solution lattice. Only sensible for small systems.
    pub fn lattice(&self) -> Option<AffineLattice> {
        let all: Vec<usize> = (0..self.n_vars).collect();
        self.project(&all)
    }

    fn form(&self, var: usize, memo: &mut HashMap<usize, Form>) -> Form {
        if let Some(f) = memo.get(&var) {
            return f.clone();
        }
        // Iterative post-order over the pivot dependency graph.
        let mut stack = vec![(var, false)];
        while let Some((v, expanded)) = stack.pop() {
            if memo.contains_key(&v) {
                continue;
            }
            match &self.roles[v] {
                VarRole::Free(p) => {
                    memo.insert(v, Form::param(*p));
                }
                VarRole::Residual(i) => {
                    let res = self.residual.as_ref().expect("residual lattice");
                    let mut terms = Vec::new();
                    for (p, col) in res.basis().iter().enumerate() {
                        if !col[*i].is_zero() {
                            terms.push((p, col[*i].clone()));
                        }
                    }
                    memo.insert(
                        v,
                        Form {
                            constant: res.particular()[*i].clone(),
                            terms,
                        },
                    );
                }
                VarRole::Eliminated(k) => {
                    let piv = &self.pivots[*k];
                    if expanded {
                        let mut f = Form {
                            constant: &piv.sign * &piv.rhs,
                            terms: Vec::new(),
                        };
                        for (u, c) in &piv.rest {
                            let k = -(c * &piv.sign);
                            f.add_scaled(&memo[u], &k);
                        }
                        memo.insert(v, f);
                    } else {
                        stack.push((v, true));
                        for (u, _) in &piv.rest {
                            if !memo.contains_key(u) {
                                stack.push((*u, false));
                            }
                        }
                    }
                }
            }
        }
        memo[&var].clone()
    }
}

/// Solves a sparse integer system exactly.
pub fn solve_sparse(sys: &SparseSystem) -> Result<SparseSolution, LatticeError> {
    let n = sys.n_vars;
    let mut rows: Vec<Option<SparseRow>> = sys.rows.iter().cloned().map(Some).collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in sys.rows.iter().enumerate() {
        for (v, _) in &r.terms {
            if *v >= n {
                return Err(LatticeError::VariableOutOfRange { var: *v, n_vars: n });
            }
            cols[*v].insert(i);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| Reverse((r.as_ref().unwrap().terms.len(), i)))
        .collect();
    let mut pivots: Vec<Pivot> = Vec::new();
    let mut roles: Vec<Option<VarRole>> = vec![None; n];

    while let Some(Reverse((len, i))) = heap.pop() {
        let Some(row) = rows[i].as_ref() else { continue };
        if row.terms.len() != len {
            continue;
        }
        let choice = row
            .terms
            .iter()
            .filter(|(_, c)| c.abs().is_one())
            .min_by_key(|(v, _)| (cols[*v].len(), *v))
            .cloned();
        let Some((var, coef)) = choice else { continue };
        let row = rows[i].take().unwrap();
        for (v, _) in &row.terms {
            cols[*v].remove(&i);
        }
        let others: Vec<usize> = cols[var].iter().copied().collect();
        for j in others {
            let target = rows[j].as_mut().unwrap();
            let c = target
                .terms
                .iter()
                .find(|(v, _)| *v == var)
                .map(|(_, c)| c.clone())
                .unwrap();
            let k = -(&c * &coef);
            let before: Vec<usize> = target.terms.iter().map(|(v, _)| *v).collect();
            target.terms = merge_scaled(&target.terms, &row.terms, &k);
            target.rhs += &row.rhs * &k;
            for v in before {
                cols[v].remove(&j);
            }
            for (v, _) in &target.terms {
                cols[*v].insert(j);
            }
            heap.push(Reverse((target.terms.len(), j)));
        }
        roles[var] = Some(VarRole::Eliminated(pivots.len()));
        pivots.push(Pivot {
            sign: coef,
            rest: row.terms.into_iter().filter(|(v, _)| *v != var).collect(),
            rhs: row.rhs,
        });
    }

    let residual_rows: Vec<SparseRow> = rows.into_iter().flatten().collect();
    let residual_vars: Vec<usize> = {
        let mut s = BTreeSet::new();
        for r in &residual_rows {
            for (v, _) in &r.terms {
                s.insert(*v);
            }
        }
        s.into_iter().collect()
    };
    let local: HashMap<usize, usize> = residual_vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut a = IntMatrix::zeros(residual_rows.len(), residual_vars.len());
    for (i, r) in residual_rows.iter().enumerate() {
        for (v, c) in &r.terms {
            a.set(i, local[v], c.clone());
        }
    }
    let b: Vec<BigInt> = residual_rows.iter().map(|r| r.rhs.clone()).collect();
    let dense_rank = super::normal::rank(&a);
    let (consistent, residual, constraint) = match solve_integer(&a, &b)? {
        Solution::Lattice(l) => {
            let constraint = ModulusConstraint {
                zero_row_obstruction: BigInt::zero(),
                diagonal_conditions: Vec::new(),
            };
            (true, Some(l), constraint)
        }
        Solution::Inconsistent(_) => (false, None, solvable_moduli(&a, &b)),
    };
    for (i, &v) in residual_vars.iter().enumerate() {
        roles[v] = Some(VarRole::Residual(i));
    }
    let mut n_params = residual.as_ref().map_or(0, AffineLattice::rank);
    let roles: Vec<VarRole> = roles
        .into_iter()
        .map(|r| {
            r.unwrap_or_else(|| {
                n_params += 1;
                VarRole::Free(n_params - 1)
            })
        })
        .collect();
    log::debug!(
        "sparse solve: {} vars, {} rows, {} unit pivots, residual {}x{}",
        n,
        sys.rows.len(),
        pivots.len(),
        residual_rows.len(),
        residual_vars.len()
    );
    Ok(SparseSolution {
        n_vars: n,
        rank: pivots.len() + dense_rank,
        constraint,
        consistent,
        pivots,
        roles,
        residual,
        n_params,
    })
}
