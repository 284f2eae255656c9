//! Exact integer linear algebra over arbitrary-precision integers.

mod affine;
mod matrix;
mod normal;
mod sparse;

pub use affine::{solvable_moduli, solve_integer, solve_modular, AffineLattice, ModulusConstraint, Solution};
pub use matrix::IntMatrix;
pub use normal::{hnf, hnf_only, hnf_pivots, rank, snf};
pub use sparse::{solve_sparse, SparseRow, SparseSolution, SparseSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: matrix has {rows} rows but right-hand side has {rhs} entries")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("variable {var} out of range for a system with {n_vars} variables")]
    VariableOutOfRange { var: usize, n_vars: usize },
}
