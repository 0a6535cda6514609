//! Smith normal form with unimodular transforms.
//!
//! Pivoting always takes the entry of smallest nonzero absolute value in the
//! remaining block, ties going to the lowest `(row, col)`. The output is
//! therefore deterministic, and the left inverse is tracked alongside `U` so
//! that cokernel generators can be read off without a second inversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    /// Unimodular, `rows x rows`.
    pub u: IntMatrix,
    /// Diagonal with `d[i] | d[i+1]`, nonnegative, zeros last.
    pub d: IntMatrix,
    /// Unimodular, `cols x cols`.
    pub v: IntMatrix,
    /// Inverse of `u`.
    pub u_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `D`, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        'pivot: while let Some((pi, pj)) = find_pivot(&a, t) {
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&p);
                let neg = -&q;
                a.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                u_inv.add_col_multiple(t, i, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&p);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Row and column t are clear; enforce divisibility of the block.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[(i, j)].is_multiple_of(&p) {
                        let one = BigInt::from(1);
                        a.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        u_inv.add_col_multiple(i, t, &-one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }

    SnfDecomposition { u, d: a, v, u_inv }
}
