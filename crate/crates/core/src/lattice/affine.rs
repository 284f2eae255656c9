use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::normal::{hnf, hnf_only, hnf_pivots, snf};
use super::{IntMatrix, LatticeError};

/// `particular + span_Z(basis)`, a translate of a sublattice of `Z^dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineLattice {
    dim: usize,
    particular: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
}

impl AffineLattice {
    /// Builds a lattice from a point and generators. Generators may be dependent;
    /// they are reduced to an independent HNF basis.
    pub fn new(particular: Vec<BigInt>, generators: Vec<Vec<BigInt>>) -> Self {
        let dim = particular.len();
        for g in &generators {
            assert_eq!(g.len(), dim, "generator dimension mismatch");
        }
        AffineLattice {
            dim,
            particular,
            basis: generators,
        }
        .canonicalize()
    }

    pub fn point(particular: Vec<BigInt>) -> Self {
        AffineLattice {
            dim: particular.len(),
            particular,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn particular(&self) -> &[BigInt] {
        &self.particular
    }

    /// Independent basis columns.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Dimension of the lattice (number of basis vectors).
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Image under the coordinate restriction to `coords`.
    pub fn project(&self, coords: &[usize]) -> AffineLattice {
        let pick = |v: &Vec<BigInt>| coords.iter().map(|&c| v[c].clone()).collect::<Vec<_>>();
        AffineLattice {
            dim: coords.len(),
            particular: pick(&self.particular),
            basis: self.basis.iter().map(pick).collect(),
        }
        .canonicalize()
    }

    /// Column HNF basis and particular reduced modulo the lattice. Two lattices
    /// describe the same point set iff their canonical forms are equal.
    pub fn canonicalize(&self) -> AffineLattice {
        let basis = hnf_basis(&self.basis, self.dim);
        let mut particular = self.particular.clone();
        reduce_against(&mut particular, &basis);
        AffineLattice {
            dim: self.dim,
            particular,
            basis,
        }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        let basis = hnf_basis(&self.basis, self.dim);
        let mut v: Vec<BigInt> = x.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        for (col, &p) in basis.iter().zip(&pivot_rows(&basis)) {
            let (q, r) = v[p].div_mod_floor(&col[p]);
            if !r.is_zero() {
                return false;
            }
            sub_scaled(&mut v, col, &q);
        }
        v.iter().all(Zero::is_zero)
    }

    /// Applies the coordinate permutation `i -> perm[i]` (new coordinate `perm[i]`
    /// takes old coordinate `i`) and re-canonicalizes.
    pub fn permute(&self, perm: &[usize]) -> AffineLattice {
        assert_eq!(perm.len(), self.dim);
        let apply = |v: &Vec<BigInt>| {
            let mut out = vec![BigInt::zero(); v.len()];
            for (i, x) in v.iter().enumerate() {
                out[perm[i]] = x.clone();
            }
            out
        };
        AffineLattice {
            dim: self.dim,
            particular: apply(&self.particular),
            basis: self.basis.iter().map(apply).collect(),
        }
        .canonicalize()
    }
}

impl fmt::Debug for AffineLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffineLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "point ({})", v(&self.particular))?;
        for b in &self.basis {
            write!(f, " + Z({})", v(b))?;
        }
        Ok(())
    }
}

/// Column HNF of the generators, zero columns dropped.
pub(crate) fn hnf_basis(generators: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if generators.is_empty() {
        return Vec::new();
    }
    let h = hnf_only(&IntMatrix::from_columns(generators, dim));
    let r = hnf_pivots(&h).len();
    (0..r).map(|c| h.column(c)).collect()
}

fn pivot_rows(basis: &[Vec<BigInt>]) -> Vec<usize> {
    basis
        .iter()
        .map(|c| c.iter().position(|x| !x.is_zero()).expect("zero basis column"))
        .collect()
}

fn sub_scaled(v: &mut [BigInt], col: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(col) {
        if !b.is_zero() {
            *a -= b * q;
        }
    }
}

fn reduce_against(v: &mut [BigInt], basis: &[Vec<BigInt>]) {
    for (col, p) in basis.iter().zip(pivot_rows(basis)) {
        let q = v[p].div_floor(&col[p]);
        sub_scaled(v, col, &q);
    }
}

/// Which moduli `m` admit a solution of `A x = b (mod m)`, read off the Smith form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModulusConstraint {
    /// gcd of the transformed right-hand sides on zero diagonal rows; 0 when none is nonzero.
    pub zero_row_obstruction: BigInt,
    /// `(d_i, b'_i)` for every nonzero diagonal entry.
    pub diagonal_conditions: Vec<(BigInt, BigInt)>,
}

impl ModulusConstraint {
    pub fn admits(&self, m: u64) -> bool {
        assert!(m > 0, "modulus must be positive");
        let m = BigInt::from(m);
        if !self.zero_row_obstruction.is_multiple_of(&m) {
            return false;
        }
        self.diagonal_conditions
            .iter()
            .all(|(d, b)| b.is_multiple_of(&d.gcd(&m)))
    }

    /// Solvable over the integers.
    pub fn is_integral(&self) -> bool {
        self.zero_row_obstruction.is_zero() && self.diagonal_conditions.iter().all(|(d, b)| b.is_multiple_of(d))
    }

    /// Smallest admissible modulus greater than one, searching up to `limit`.
    pub fn smallest_modulus(&self, limit: u64) -> Option<u64> {
        (2..=limit).find(|&m| self.admits(m))
    }
}

impl fmt::Display for ModulusConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}", self.zero_row_obstruction)?;
        let nontrivial: Vec<String> = self
            .diagonal_conditions
            .iter()
            .filter(|(d, _)| !d.is_one())
            .map(|(d, b)| format!("({d},{b})"))
            .collect();
        if !nontrivial.is_empty() {
            write!(f, " diag={}", nontrivial.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Lattice(AffineLattice),
    Inconsistent(ModulusConstraint),
}

impl Solution {
    pub fn lattice(&self) -> Option<&AffineLattice> {
        match self {
            Solution::Lattice(l) => Some(l),
            Solution::Inconsistent(_) => None,
        }
    }
}

/// Solves `A x = b` over the integers.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Solution, LatticeError> {
    if a.rows() != b.len() {
        return Err(LatticeError::DimensionMismatch {
            rows: a.rows(),
            rhs: b.len(),
        });
    }
    let n = a.cols();
    let (h, u) = hnf(a);
    let pivots = hnf_pivots(&h);
    let r = pivots.len();
    let mut y = vec![BigInt::zero(); n];
    let mut ok = true;
    for (j, &p) in pivots.iter().enumerate() {
        let mut acc = b[p].clone();
        for (l, yl) in y.iter().enumerate().take(j) {
            acc -= h.get(p, l) * yl;
        }
        let (q, rem) = acc.div_mod_floor(h.get(p, j));
        if !rem.is_zero() {
            ok = false;
            break;
        }
        y[j] = q;
    }
    if ok && h.mul_vec(&y) != b {
        ok = false;
    }
    if !ok {
        return Ok(Solution::Inconsistent(solvable_moduli(a, b)));
    }
    let x = u.mul_vec(&y);
    let kernel: Vec<Vec<BigInt>> = (r..n).map(|c| u.column(c)).collect();
    Ok(Solution::Lattice(AffineLattice::new(x, kernel)))
}

/// Modular solvability data from the Smith form of `A`.
pub fn solvable_moduli(a: &IntMatrix, b: &[BigInt]) -> ModulusConstraint {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let (s, u, _) = snf(a);
    let bp = u.mul_vec(b);
    let mut diagonal_conditions = Vec::new();
    let mut n = BigInt::zero();
    for (i, bi) in bp.iter().enumerate() {
        let d = if i < s.cols() { s.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            n = n.gcd(bi);
        } else {
            diagonal_conditions.push((d, bi.clone()));
        }
    }
    ModulusConstraint {
        zero_row_obstruction: n.abs(),
        diagonal_conditions,
    }
}

/// Point set of `{x : A x = b (mod m)}` as an affine lattice containing `m Z^n`,
/// or `None` if empty.
pub fn solve_modular(a: &IntMatrix, b: &[BigInt], m: u64) -> Result<Option<AffineLattice>, LatticeError> {
    let n = a.cols();
    let mut aug = IntMatrix::zeros(a.rows(), n + a.rows());
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, BigInt::from(m));
    }
    Ok(match solve_integer(&aug, b)? {
        Solution::Lattice(l) => {
            let coords: Vec<usize> = (0..n).collect();
            let proj = l.project(&coords);
            let mut gens = proj.basis().to_vec();
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::from(m);
                gens.push(e);
            }
            Some(AffineLattice::new(proj.particular().to_vec(), gens))
        }
        Solution::Inconsistent(_) => None,
    })
}
