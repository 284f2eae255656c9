use crown_core::lattice::{
    hnf, hnf_pivots, rank, snf, solvable_moduli, solve_integer, solve_modular, solve_sparse, AffineLattice, IntMatrix,
    Solution, SparseRow, SparseSystem,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn unimodular(u: &IntMatrix) -> bool {
    u.determinant().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_is_a_unimodular_column_echelon_form(rows in matrix(5, 6)) {
        let m = IntMatrix::from_rows(&rows);
        let (h, u) = hnf(&m);
        prop_assert_eq!(m.mul(&u), h.clone());
        prop_assert!(unimodular(&u));
        let pivots = hnf_pivots(&h);
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (j, &p) in pivots.iter().enumerate() {
            prop_assert!(h.get(p, j).is_positive());
            for r in 0..p {
                prop_assert!(h.get(r, j).is_zero());
            }
            for l in 0..j {
                prop_assert!(!h.get(p, l).is_negative() && h.get(p, l) < h.get(p, j));
            }
        }
        for j in pivots.len()..h.cols() {
            prop_assert!(h.column(j).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn snf_diagonal_divides_down(rows in matrix(5, 5)) {
        let m = IntMatrix::from_rows(&rows);
        let (s, u, v) = snf(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), s.clone());
        prop_assert!(unimodular(&u) && unimodular(&v));
        let d: Vec<BigInt> = (0..s.rows().min(s.cols())).map(|i| s.get(i, i).clone()).collect();
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    prop_assert!(s.get(i, j).is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        prop_assert_eq!(d.iter().filter(|x| !x.is_zero()).count(), rank(&m));
    }

    #[test]
    fn planted_solution_is_found(rows in matrix(5, 6), seed in prop::collection::vec(-9i64..=9, 6)) {
        let m = IntMatrix::from_rows(&rows);
        let x0 = big(&seed[..m.cols()]);
        let b = m.mul_vec(&x0);
        let sol = solve_integer(&m, &b).unwrap();
        let Solution::Lattice(l) = sol else { return Err(TestCaseError::fail("planted system reported inconsistent")) };
        prop_assert!(l.contains(&x0));
        prop_assert_eq!(m.mul_vec(l.particular()), b.clone());
        prop_assert_eq!(l.rank(), m.cols() - rank(&m));
        for g in l.basis() {
            prop_assert!(m.mul_vec(g).iter().all(Zero::is_zero));
        }
        prop_assert!(solvable_moduli(&m, &b).is_integral());
    }

    #[test]
    fn sparse_and_dense_agree(rows in matrix(6, 5), rhs in prop::collection::vec(-6i64..=6, 6)) {
        let n = rows[0].len();
        let mut sys = SparseSystem::new(n);
        for (r, row) in rows.iter().enumerate() {
            let terms = row.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, &c)| (j, BigInt::from(c))).collect();
            sys.push(SparseRow::new(terms, BigInt::from(rhs[r])));
        }
        let sol = solve_sparse(&sys).unwrap();
        let (a, b) = sys.to_dense();
        let dense = solve_integer(&a, &b).unwrap();
        prop_assert_eq!(sol.lattice().map(|l| l.canonicalize()), dense.lattice().map(AffineLattice::canonicalize));
        prop_assert_eq!(sol.rank(), rank(&a));
        prop_assert_eq!(sol.is_consistent(), dense.lattice().is_some());
    }

    #[test]
    fn canonical_form_ignores_presentation(
        p in prop::collection::vec(-9i64..=9, 3),
        gens in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..4),
        mix in prop::collection::vec(-3i64..=3, 4),
    ) {
        let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| big(g)).collect();
        let a = AffineLattice::new(big(&p), gens.clone());
        // Shift the base point by a lattice vector, reverse and extend the generators.
        let mut shifted = big(&p);
        let mut extra = vec![BigInt::zero(); 3];
        for (g, &c) in gens.iter().zip(&mix) {
            for i in 0..3 {
                shifted[i] += &g[i] * c;
                extra[i] += &g[i] * (c + 1);
            }
        }
        let mut gens2: Vec<Vec<BigInt>> = gens.iter().rev().cloned().collect();
        gens2.push(extra);
        let b = AffineLattice::new(shifted, gens2);
        prop_assert_eq!(a.canonicalize(), b.canonicalize());
        prop_assert_eq!(a.canonicalize().canonicalize(), a.canonicalize());
    }

    #[test]
    fn modular_points_satisfy_the_congruence(rows in matrix(3, 3), rhs in prop::collection::vec(-6i64..=6, 3), m in 2u64..=12) {
        let a = IntMatrix::from_rows(&rows);
        let b = big(&rhs[..a.rows()]);
        let set = solve_modular(&a, &b, m).unwrap();
        prop_assert_eq!(set.is_some(), solvable_moduli(&a, &b).admits(m));
        if let Some(l) = set {
            let mb = BigInt::from(m);
            let ok = |x: &[BigInt]| a.mul_vec(x).iter().zip(&b).all(|(l, r)| ((l - r) % &mb).is_zero());
            prop_assert!(ok(l.particular()));
            for g in l.basis() {
                prop_assert!(a.mul_vec(g).iter().all(|v| (v % &mb).is_zero()));
            }
        }
    }
}

#[test]
fn inconsistent_parity() {
    let a = IntMatrix::from_rows(&[vec![2, 4], vec![1, 1]]);
    let sol = solve_integer(&a, &big(&[1, 0])).unwrap();
    let Solution::Inconsistent(c) = sol else { panic!("2x + 4y = 1 has no integer solution") };
    assert!(!c.is_integral());
    assert_eq!(c.smallest_modulus(100), Some(3));
}
