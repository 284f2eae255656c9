use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Column-style Hermite normal form: returns `(H, U)` with `H = M * U`, `U` unimodular.
///
/// `H` is in column echelon form: pivot rows strictly increase with the column
/// index, pivots are positive, entries left of a pivot lie in `[0, pivot)`, and
/// every column past the rank is zero. The trailing columns of `U` therefore
/// span the integer kernel of `M`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = Some(IntMatrix::identity(m.cols()));
    hnf_in_place(&mut h, &mut u);
    (h, u.unwrap())
}

/// Hermite normal form without the transform; cheaper when only the lattice matters.
pub fn hnf_only(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    hnf_in_place(&mut h, &mut None);
    h
}

/// Returns the pivot row of every nonzero column of a matrix in column HNF.
pub fn hnf_pivots(h: &IntMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..h.cols() {
        while row < h.rows() && h.get(row, c).is_zero() {
            row += 1;
        }
        if row == h.rows() {
            break;
        }
        pivots.push(row);
        row += 1;
    }
    pivots
}

fn hnf_in_place(h: &mut IntMatrix, u: &mut Option<IntMatrix>) {
    let (rows, cols) = (h.rows(), h.cols());
    let mut r = 0;
    for i in 0..rows {
        if r == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for c in r..cols {
                let v = h.get(i, c);
                if !v.is_zero() && best.map_or(true, |b| v.abs() < h.get(i, b).abs()) {
                    best = Some(c);
                }
            }
            let Some(p) = best else { break };
            h.swap_cols(r, p);
            if let Some(u) = u.as_mut() {
                u.swap_cols(r, p);
            }
            let mut done = true;
            for c in r + 1..cols {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(i, r));
                h.sub_col_multiple(c, r, &q);
                if let Some(u) = u.as_mut() {
                    u.sub_col_multiple(c, r, &q);
                }
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(i, r).is_zero() {
            continue;
        }
        if h.get(i, r).is_negative() {
            h.negate_col(r);
            if let Some(u) = u.as_mut() {
                u.negate_col(r);
            }
        }
        for c in 0..r {
            let q = h.get(i, c).div_floor(h.get(i, r));
            if !q.is_zero() {
                h.sub_col_multiple(c, r, &q);
                if let Some(u) = u.as_mut() {
                    u.sub_col_multiple(c, r, &q);
                }
            }
        }
        r += 1;
    }
}

/// Smith normal form: returns `(S, U, V)` with `S = U * M * V` diagonal,
/// nonnegative, and `S[i][i] | S[i+1][i+1]`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        let Some((pi, pj)) = min_abs_entry(&s, t..rows, t..cols) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).div_floor(s.get(t, t));
                s.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).div_floor(s.get(t, t));
                s.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; move it to the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = s.get(i, t);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = s.get(t, j);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let pivot = s.get(t, t).clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    s.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

fn min_abs_entry(
    s: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    hnf_pivots(&hnf_only(m)).len()
}
