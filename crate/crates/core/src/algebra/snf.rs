//! Smith normal form over ℤ.
//!
//! Pivoting always picks the nonzero entry of least absolute value in the
//! active block, ties broken by smallest (row, column); the output is a pure
//! function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Ring};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

type Dense = Vec<Vec<BigInt>>;

fn dense_identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn to_matrix(a: Dense, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(Ring::Integers, rows, cols);
    for (i, row) in a.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v);
            }
        }
    }
    m
}

// row_i += k · row_j
fn add_row(a: &mut Dense, i: usize, j: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let src = a[j].clone();
    for (x, s) in a[i].iter_mut().zip(&src) {
        if !s.is_zero() {
            *x += k * s;
        }
    }
}

// col_i += k · col_j
fn add_col(a: &mut Dense, i: usize, j: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        if !row[j].is_zero() {
            let s = k * &row[j];
            row[i] += s;
        }
    }
}

fn swap_cols(a: &mut Dense, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith normal form of an integer matrix. Panics on non-ℤ input.
pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    assert_eq!(
        m.ring(),
        Ring::Integers,
        "Smith normal form needs integer entries"
    );
    let (rows, cols) = m.shape();
    let mut a: Dense = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut u = dense_identity(rows);
    let mut v = dense_identity(cols);

    for t in 0..rows.min(cols) {
        // least |entry| in the active block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -(a[i][t].div_floor(&a[t][t]));
                add_row(&mut a, i, t, &q);
                add_row(&mut u, i, t, &q);
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -(a[t][j].div_floor(&a[t][t]));
                add_col(&mut a, j, t, &q);
                add_col(&mut v, j, t, &q);
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survived; move the least one in
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    swap_cols(&mut v, t, best.1);
                }
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offender {
                Some((i, _)) => {
                    add_row(&mut a, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -std::mem::take(x);
            }
        }
    }

    SmithForm {
        u: to_matrix(u, rows, rows),
        d: to_matrix(a, rows, cols),
        v: to_matrix(v, cols, cols),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::is_unimodular;
    use proptest::prelude::*;

    fn check(m: &Matrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        let (r, c) = s.d.shape();
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        // no nonzero diagonal entry after the first zero
        assert!((f.len()..r.min(c)).all(|i| s.d.get(i, i).is_zero()));
        s
    }

    #[test]
    fn diag_2_3() {
        let s = check(&Matrix::from_rows(
            Ring::Integers,
            &[vec![2, 0], vec![0, 3]],
        ));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn zero_matrix_keeps_identities() {
        let z = Matrix::zeros(Ring::Integers, 2, 3);
        let s = check(&z);
        assert_eq!(s.u, Matrix::identity(Ring::Integers, 2));
        assert_eq!(s.v, Matrix::identity(Ring::Integers, 3));
        assert!(s.d.is_zero());
    }

    #[test]
    fn triangle_boundary() {
        // d₁ of Δ²: columns are edges [0,1], [0,2], [1,2]
        let d1 = Matrix::from_rows(
            Ring::Integers,
            &[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]],
        );
        let s = check(&d1);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(1)]
        );
    }

    #[test]
    fn deterministic() {
        let m = Matrix::from_rows(
            Ring::Integers,
            &[vec![4, 6, 2], vec![6, 9, 3], vec![8, 1, 5]],
        );
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!((a.u, a.d, a.v), (b.u, b.d, b.v));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_matrices(rows in 0usize..7, cols in 0usize..7, seed in proptest::collection::vec(-9i64..10, 49)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 7 + j]).collect()).collect();
            let m = if rows == 0 { Matrix::zeros(Ring::Integers, 0, cols) } else { Matrix::from_rows(Ring::Integers, &data) };
            check(&m);
        }
    }
}
